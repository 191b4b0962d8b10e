use crate::error::{require, Result};
use crate::num::Real;

/// Axis-aligned rectangle [x0, x1] × [y0, y1] with positive area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub x0: T,
    pub x1: T,
    pub y0: T,
    pub y1: T,
}

impl<T: Real> Rect<T> {
    pub fn new(x0: T, x1: T, y0: T, y1: T) -> Result<Self> {
        let finite = x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite();
        require(finite && x1 > x0, "domain x-range width", "positive", (x1 - x0).as_f64())?;
        require(finite && y1 > y0, "domain y-range height", "positive", (y1 - y0).as_f64())?;
        Ok(Self { x0, x1, y0, y1 })
    }

    /// [−h, h]².
    pub fn square(half_width: T) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width)
    }

    pub fn width(&self) -> T {
        self.x1 - self.x0
    }

    pub fn height(&self) -> T {
        self.y1 - self.y0
    }

    pub fn contains(&self, p: [T; 2]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }

    /// Point where the segment from `inside` to `outside` crosses the boundary.
    pub fn clip(&self, inside: [T; 2], outside: [T; 2]) -> [T; 2] {
        let mut t = T::one();
        for axis in 0..2 {
            let (lo, hi) = if axis == 0 { (self.x0, self.x1) } else { (self.y0, self.y1) };
            let d = outside[axis] - inside[axis];
            if outside[axis] > hi && d > T::zero() {
                t = t.min((hi - inside[axis]) / d);
            } else if outside[axis] < lo && d < T::zero() {
                t = t.min((lo - inside[axis]) / d);
            }
        }
        let t = t.max(T::zero());
        [
            inside[0] + t * (outside[0] - inside[0]),
            inside[1] + t * (outside[1] - inside[1]),
        ]
    }
}

/// Straight probe from `from` to `to` sampled at `samples` evenly spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T> {
    pub from: [T; 2],
    pub to: [T; 2],
    pub samples: usize,
}

impl<T: Real> Segment<T> {
    pub fn new(from: [T; 2], to: [T; 2], samples: usize) -> Self {
        Self { from, to, samples }
    }

    pub fn length(&self) -> T {
        let dx = self.to[0] - self.from[0];
        let dy = self.to[1] - self.from[1];
        (dx * dx + dy * dy).sqrt()
    }

    /// Distance between consecutive samples.
    pub fn spacing(&self) -> T {
        self.length() / T::from_usize_exact(self.samples.max(2) - 1)
    }

    pub fn points(&self) -> Vec<[T; 2]> {
        let n = self.samples;
        (0..n)
            .map(|i| {
                let t = if n > 1 {
                    T::from_usize_exact(i) / T::from_usize_exact(n - 1)
                } else {
                    T::zero()
                };
                [
                    self.from[0] + t * (self.to[0] - self.from[0]),
                    self.from[1] + t * (self.to[1] - self.from[1]),
                ]
            })
            .collect()
    }
}

use crate::dynamics::POLE_RADIUS;
use crate::error::{require, Result};
use crate::geom::Rect;
use crate::num::Real;
use crate::pseudoforce::{eval_dipole, DipoleConfig, Orbital};
use rayon::prelude::*;

/// Pixel-averaged |Φ| and |Ψ|: each pixel reports the mean magnitude over an
/// s × s set of sub-samples, the way a finite detector element integrates.
#[derive(Debug, Clone)]
pub struct MagnitudeGrid<T> {
    pub rect: Rect<T>,
    pub nx: usize,
    pub ny: usize,
    pub subsamples: usize,
    pub phi: Vec<T>,
    pub psi: Vec<T>,
}

impl<T: Real> MagnitudeGrid<T> {
    pub fn pixel_width(&self) -> T {
        self.rect.width() / T::from_usize_exact(self.nx)
    }

    pub fn pixel_height(&self) -> T {
        self.rect.height() / T::from_usize_exact(self.ny)
    }

    /// Pixel centre abscissa.
    pub fn x(&self, i: usize) -> T {
        self.rect.x0 + self.pixel_width() * (T::from_usize_exact(i) + T::lit(0.5))
    }

    pub fn y(&self, j: usize) -> T {
        self.rect.y0 + self.pixel_height() * (T::from_usize_exact(j) + T::lit(0.5))
    }

    pub fn phi_row(&self, j: usize) -> &[T] {
        &self.phi[j * self.nx..(j + 1) * self.nx]
    }

    pub fn psi_row(&self, j: usize) -> &[T] {
        &self.psi[j * self.nx..(j + 1) * self.nx]
    }
}

/// Sub-samples per pixel side so the fast wavelength gets at least four
/// samples: max(2, ⌈2·pixel·k₂/π⌉).
pub fn detector_subsamples<T: Real>(orb: &Orbital<T>, pixel: T) -> usize {
    let s = (T::lit(2.0) * pixel * orb.k2() / T::PI()).ceil();
    s.to_usize().unwrap_or(2).max(2)
}

/// Evaluates pixel-averaged magnitudes on an `nx` × `ny` pixel array covering `rect` at z = 0.
///
/// Pixels with a sub-sample inside the pole mask are NaN.
pub fn evaluate_magnitudes<T: Real>(
    cfg: &DipoleConfig<T>,
    rect: Rect<T>,
    nx: usize,
    ny: usize,
    subsamples: usize,
) -> Result<MagnitudeGrid<T>> {
    require(nx >= 1 && ny >= 1, "pixel count", "at least 1", nx.min(ny) as f64)?;
    require(subsamples >= 1, "subsamples", "at least 1", subsamples as f64)?;
    let mut grid = MagnitudeGrid {
        rect,
        nx,
        ny,
        subsamples,
        phi: Vec::new(),
        psi: Vec::new(),
    };
    let (pw, ph) = (grid.pixel_width(), grid.pixel_height());
    let st = T::from_usize_exact(subsamples);
    let offsets: Vec<T> = (0..subsamples)
        .map(|k| (T::from_usize_exact(k) + T::lit(0.5)) / st - T::lit(0.5))
        .collect();
    let norm = T::one() / (st * st);
    let mask = T::lit(POLE_RADIUS);

    let rows: Vec<Vec<(T, T)>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let yc = grid.y(j);
            (0..nx)
                .map(|i| {
                    let xc = grid.x(i);
                    let (mut sphi, mut spsi) = (T::zero(), T::zero());
                    for &oy in &offsets {
                        for &ox in &offsets {
                            let p = [xc + ox * pw, yc + oy * ph, T::zero()];
                            if cfg.pole_distance(p) < mask {
                                return Ok((T::nan(), T::nan()));
                            }
                            let (f, s) = eval_dipole(p, cfg)?;
                            sphi += f.norm();
                            spsi += s.norm();
                        }
                    }
                    Ok((sphi * norm, spsi * norm))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    grid.phi.reserve(nx * ny);
    grid.psi.reserve(nx * ny);
    for (f, s) in rows.into_iter().flatten() {
        grid.phi.push(f);
        grid.psi.push(s);
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_subsample_is_point_value() {
        let cfg = DipoleConfig::new(Orbital::new(5.0_f64).unwrap(), 2.0, 1.0).unwrap();
        let g = evaluate_magnitudes(&cfg, Rect::new(-8.0, 8.0, 1.0, 3.0).unwrap(), 32, 4, 1).unwrap();
        let (f, s) = eval_dipole([g.x(7), g.y(2), 0.0], &cfg).unwrap();
        let k = 2 * 32 + 7;
        assert_eq!(g.phi[k], f.norm());
        assert_eq!(g.psi[k], s.norm());
    }

    #[test]
    fn subsample_rule() {
        let o = Orbital::new(20.0_f64).unwrap();
        assert_eq!(detector_subsamples(&o, 0.01), 2);
        assert_eq!(detector_subsamples(&o, 1.0), (2.0 * o.k2() / std::f64::consts::PI).ceil() as usize);
    }
}

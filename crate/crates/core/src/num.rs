//! Scalar abstraction for the numerical kernels.
//!
//! Everything below the physical-unit layer (`scales`, `eos`) is written
//! against [`Real`], so the same code runs in `f32` for quick previews and
//! `f64` for the reference results.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot hold,
    /// which never happens for the literals used in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `n` evenly spaced values from `start` to `end` inclusive.
pub fn linspace<T: Real>(start: T, end: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / T::from_usize_exact(n - 1);
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        end
                    } else {
                        start + step * T::from_usize_exact(i)
                    }
                })
                .collect()
        }
    }
}

/// `n` logarithmically spaced values from `start` to `end` inclusive (both > 0).
pub fn logspace<T: Real>(start: T, end: T, n: usize) -> Vec<T> {
    linspace(start.ln(), end.ln(), n)
        .into_iter()
        .map(Float::exp)
        .collect()
}

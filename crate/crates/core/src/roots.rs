//! Bracketed scalar root finding: bisection down to a coarse width, then a
//! secant iteration that falls back to bisection whenever it leaves the bracket.

use crate::error::{Error, Result};
use crate::num::Real;

#[derive(Debug, Clone, Copy)]
pub struct RootOptions<T> {
    /// Bracket width at which bisection hands over to the secant phase.
    pub bisect_width: T,
    /// Accept once |f| falls to this value.
    pub ftol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for RootOptions<T> {
    fn default() -> Self {
        Self {
            bisect_width: T::lit(1e-3),
            ftol: T::lit(1e-12),
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]`. `f(lo)` and `f(hi)` must differ in sign.
pub fn find_root<T: Real, F: FnMut(T) -> Result<T>>(mut f: F, lo: T, hi: T, opts: RootOptions<T>) -> Result<T> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let fail = |a: T, b: T| Error::Convergence {
        lo: a.as_f64(),
        hi: b.as_f64(),
    };
    if fa.abs() <= opts.ftol {
        return Ok(a);
    }
    if fb.abs() <= opts.ftol {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(fail(a, b));
    }

    let half = T::lit(0.5);
    let mut iter = 0;
    while b - a > opts.bisect_width {
        if iter >= opts.max_iter {
            return Err(fail(a, b));
        }
        iter += 1;
        let m = half * (a + b);
        let fm = f(m)?;
        if fm.abs() <= opts.ftol {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    while iter < opts.max_iter {
        iter += 1;
        let mut x = x1 - f1 * (x1 - x0) / (f1 - f0);
        let inside = x > a && x < b && x.is_finite();
        if !inside {
            x = half * (a + b);
        }
        let fx = f(x)?;
        if fx.abs() <= opts.ftol || b - a <= T::epsilon() * (a.abs() + b.abs()) {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;
    }
    Err(fail(a, b))
}

use super::Lattice;
use crate::num::Real;

/// Second-order derivative along a strided line: central inside, one-sided
/// three-point at the two ends.
fn derivative<T: Real>(f: impl Fn(usize) -> T, i: usize, n: usize, h: T) -> T {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    if i == 0 {
        (-three * f(0) + four * f(1) - f(2)) / (two * h)
    } else if i + 1 == n {
        (three * f(n - 1) - four * f(n - 2) + f(n - 3)) / (two * h)
    } else {
        (f(i + 1) - f(i - 1)) / (two * h)
    }
}

/// ∂vₓ/∂x + ∂v_y/∂y on the lattice. NaN (masked) inputs poison their stencil neighbours.
pub fn divergence_2d<T: Real>(v: &[[T; 2]], lattice: &Lattice<T>) -> Vec<T> {
    let (nx, ny) = (lattice.nx, lattice.ny);
    let (dx, dy) = (lattice.dx(), lattice.dy());
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let ddx = derivative(|k| v[j * nx + k][0], i, nx, dx);
            let ddy = derivative(|k| v[k * nx + i][1], j, ny, dy);
            out.push(ddx + ddy);
        }
    }
    out
}

use crate::error::{Error, Result};
use crate::num::Real;
use crate::pseudoforce::{sample_dipole, DipoleConfig, LineSolution};
use num_complex::Complex;

/// Density below which a point counts as a wavefunction node.
pub const NODE_THRESHOLD: f64 = 1e-12;

/// A complex statefunction on the plane with its analytic gradient.
pub trait StateField<T: Real> {
    fn psi_with_gradient(&self, p: [T; 2]) -> Result<(Complex<T>, [Complex<T>; 2])>;
}

/// The z = 0 slice of the two-pole field.
impl<T: Real> StateField<T> for DipoleConfig<T> {
    fn psi_with_gradient(&self, p: [T; 2]) -> Result<(Complex<T>, [Complex<T>; 2])> {
        let s = sample_dipole([p[0], p[1], T::zero()], self)?;
        Ok((s.psi, [s.grad_psi[0], s.grad_psi[1]]))
    }
}

/// The 1D solution extended uniformly along y.
impl<T: Real> StateField<T> for LineSolution<T> {
    fn psi_with_gradient(&self, p: [T; 2]) -> Result<(Complex<T>, [Complex<T>; 2])> {
        let z = T::zero();
        let psi = self.eval(p[0]).1;
        let d = self.gradient(p[0]).1;
        Ok((Complex::new(psi, z), [Complex::new(d, z), Complex::new(z, z)]))
    }
}

/// Probability current J = (i/2)(Ψ∇Ψ* − Ψ*∇Ψ) = Im(Ψ*∇Ψ) and density n = |Ψ|².
pub fn probability_current<T: Real, F: StateField<T> + ?Sized>(field: &F, p: [T; 2]) -> Result<([T; 2], T)> {
    let (psi, grad) = field.psi_with_gradient(p)?;
    let c = psi.conj();
    Ok(([(c * grad[0]).im, (c * grad[1]).im], psi.norm_sqr()))
}

/// Guiding velocity J/n. Fails with [`Error::Node`] where n < 1e-12.
pub fn bohmian_velocity<T: Real, F: StateField<T> + ?Sized>(field: &F, p: [T; 2]) -> Result<[T; 2]> {
    let (j, n) = probability_current(field, p)?;
    if !(n >= T::lit(NODE_THRESHOLD)) {
        return Err(Error::Node { density: n.as_f64() });
    }
    Ok([j[0] / n, j[1] / n])
}

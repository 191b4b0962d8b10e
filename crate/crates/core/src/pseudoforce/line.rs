use super::Orbital;
use crate::num::Real;

/// Values of Φ and Ψ at the origin; slopes there are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConstants<T> {
    pub phi0: T,
    pub psi0: T,
}

impl<T: Real> BoundaryConstants<T> {
    pub fn new(phi0: T, psi0: T) -> Self {
        Self { phi0, psi0 }
    }

    /// Φ₀ = Ψ₀ = 1.
    pub fn unit() -> Self {
        Self::new(T::one(), T::one())
    }
}

impl<T: Real> Default for BoundaryConstants<T> {
    fn default() -> Self {
        Self::unit()
    }
}

/// Amplitudes multiplying the (k₁, k₂) modes of Φ and Ψ.
///
/// Each mode obeys Ψₖ = −k²Φₖ, which is what makes both field equations hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes<T> {
    pub phi: [T; 2],
    pub psi: [T; 2],
}

impl<T: Real> ModeAmplitudes<T> {
    pub fn new(bc: BoundaryConstants<T>, orb: &Orbital<T>) -> Self {
        let (k1s, k2s) = (orb.k1() * orb.k1(), orb.k2() * orb.k2());
        let inv = (T::lit(2.0) * orb.alpha()).recip();
        let BoundaryConstants { phi0, psi0 } = bc;
        Self {
            phi: [(psi0 + k2s * phi0) * inv, -(psi0 + k1s * phi0) * inv],
            psi: [-(phi0 + k1s * psi0) * inv, (phi0 + k2s * psi0) * inv],
        }
    }

    pub fn scaled(self, q: T) -> Self {
        Self {
            phi: [self.phi[0] * q, self.phi[1] * q],
            psi: [self.psi[0] * q, self.psi[1] * q],
        }
    }
}

/// Even 1D solution Φ, Ψ = Σ amplitude · cos(kx).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSolution<T> {
    pub orbital: Orbital<T>,
    pub amplitudes: ModeAmplitudes<T>,
}

impl<T: Real> LineSolution<T> {
    pub fn new(bc: BoundaryConstants<T>, orbital: Orbital<T>) -> Self {
        Self {
            orbital,
            amplitudes: ModeAmplitudes::new(bc, &orbital),
        }
    }

    fn combine(&self, basis: [T; 2]) -> (T, T) {
        let m = &self.amplitudes;
        (
            m.phi[0] * basis[0] + m.phi[1] * basis[1],
            m.psi[0] * basis[0] + m.psi[1] * basis[1],
        )
    }

    /// (Φ, Ψ).
    pub fn eval(&self, x: T) -> (T, T) {
        let [k1, k2] = self.orbital.wavenumbers();
        self.combine([(k1 * x).cos(), (k2 * x).cos()])
    }

    /// (Φ′, Ψ′).
    pub fn gradient(&self, x: T) -> (T, T) {
        let [k1, k2] = self.orbital.wavenumbers();
        self.combine([-k1 * (k1 * x).sin(), -k2 * (k2 * x).sin()])
    }

    /// (Φ″, Ψ″).
    pub fn curvature(&self, x: T) -> (T, T) {
        let [k1, k2] = self.orbital.wavenumbers();
        self.combine([-k1 * k1 * (k1 * x).cos(), -k2 * k2 * (k2 * x).cos()])
    }

    /// Residuals (Ψ″ + Φ + 2EΨ, Φ″ − Ψ) of the field equations at `x`.
    pub fn residuals(&self, x: T) -> (T, T) {
        let (phi, psi) = self.eval(x);
        let (phi2, psi2) = self.curvature(x);
        let two_e = T::lit(2.0) * self.orbital.energy();
        (psi2 + phi + two_e * psi, phi2 - psi)
    }
}

/// (Φ, Ψ) of the even 1D solution.
pub fn eval_1d<T: Real>(x: T, bc: BoundaryConstants<T>, orb: &Orbital<T>) -> (T, T) {
    LineSolution::new(bc, *orb).eval(x)
}

/// (dΦ/dx, dΨ/dx) of the even 1D solution.
pub fn eval_1d_gradient<T: Real>(x: T, bc: BoundaryConstants<T>, orb: &Orbital<T>) -> (T, T) {
    LineSolution::new(bc, *orb).gradient(x)
}

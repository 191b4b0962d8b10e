use crate::error::{require, Error, Result};
use crate::num::Real;
use num_complex::Complex;

/// Quasiparticle orbital at normalized energy E > 1 and its two wavenumbers.
///
/// k₂ = √(E + α) is formed directly and k₁ = 1/k₂. This equals √(E − α)
/// algebraically but avoids the cancellation that ruins k₁ at large E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbital<T> {
    energy: T,
    alpha: T,
    k1: T,
    k2: T,
}

impl<T: Real> Orbital<T> {
    pub fn new(energy: T) -> Result<Self> {
        require(energy.is_finite(), "orbital energy E", "finite", energy.as_f64())?;
        if energy <= T::one() {
            return Err(Error::DegenerateOrbital {
                energy: energy.as_f64(),
            });
        }
        let alpha = ((energy - T::one()) * (energy + T::one())).sqrt();
        let k2 = (energy + alpha).sqrt();
        Ok(Self {
            energy,
            alpha,
            k1: k2.recip(),
            k2,
        })
    }

    /// Orbital of an excitation with eigenvalue `eps` above the equilibrium
    /// chemical potential `mu0`, both in the same energy unit as `plasmon_energy`.
    pub fn from_eigenvalue(eps: T, mu0: T, plasmon_energy: T) -> Result<Self> {
        require(
            plasmon_energy > T::zero(),
            "plasmon energy E_p",
            "positive",
            plasmon_energy.as_f64(),
        )?;
        Self::new((eps - mu0) / plasmon_energy)
    }

    /// ε = E·E_p + μ₀.
    pub fn eigenvalue(&self, mu0: T, plasmon_energy: T) -> T {
        self.energy * plasmon_energy + mu0
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Collective (long-range) wavenumber.
    pub fn k1(&self) -> T {
        self.k1
    }

    /// Single-electron wavenumber.
    pub fn k2(&self) -> T {
        self.k2
    }

    pub fn wavenumbers(&self) -> [T; 2] {
        [self.k1, self.k2]
    }

    /// 2π/k₁.
    pub fn slow_wavelength(&self) -> T {
        T::TAU() / self.k1
    }

    /// 2π/k₂.
    pub fn fast_wavelength(&self) -> T {
        T::TAU() / self.k2
    }
}

/// E(k) = k²/2 + 1/(2k²).
pub fn eval_dispersion<T: Real>(k: T) -> Result<T> {
    require(k > T::zero() && k.is_finite(), "wavenumber k", "positive and finite", k.as_f64())?;
    let half = T::lit(0.5);
    let k2 = k * k;
    Ok(half * k2 + half / k2)
}

/// Free-electron reference k²/2.
pub fn free_dispersion<T: Real>(k: T) -> T {
    T::lit(0.5) * k * k
}

/// Stationary time factor e^{iεt}.
pub fn eval_time_phase<T: Real>(eps: T, t: T) -> Complex<T> {
    let (s, c) = (eps * t).sin_cos();
    Complex::new(c, s)
}

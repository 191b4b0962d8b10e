//! Isothermal equation of state of a free electron gas at arbitrary degeneracy.
//!
//! n(μ,T) = √2 m^{3/2}/(π²ħ³) ∫ √ε dε / (e^{β(ε−μ)} + 1)
//! P(μ,T) = 2^{3/2} m^{3/2}/(3π²ħ³) ∫ ε^{3/2} dε / (e^{β(ε−μ)} + 1)
//!
//! Energies cross the API in eV, densities in cm⁻³, pressures in erg/cm³.

use crate::constants::{BOLTZMANN, ELECTRON_MASS, ELECTRON_VOLT, HBAR};
use crate::error::{require, Error, Result};
use crate::quad::{integrate, integrate_tail, Tolerance};
use crate::roots::{find_root, RootOptions};
use std::f64::consts::{PI, SQRT_2};

/// Distance past the Fermi knee, in units of k_BT, where the exponential tail map starts.
const TAIL_OFFSET: f64 = 40.0;

/// `value · exp(log_scale)`; keeps deep-classical integrals representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub value: f64,
    pub log_scale: f64,
}

impl Scaled {
    pub fn get(&self) -> f64 {
        self.value * self.log_scale.exp()
    }

    pub fn ln(&self) -> f64 {
        self.value.ln() + self.log_scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosPoint {
    /// Chemical potential [eV].
    pub mu: f64,
    /// Temperature [K].
    pub temperature: f64,
    /// Number density [cm⁻³].
    pub density: f64,
    /// Pressure [erg/cm³].
    pub pressure: f64,
}

/// Occupancy divided by e^{min(η,0)}.
fn scaled_occupancy(x: f64, eta: f64) -> f64 {
    if eta >= 0.0 {
        let d = x - eta;
        if d > 0.0 {
            let e = (-d).exp();
            e / (1.0 + e)
        } else {
            1.0 / (d.exp() + 1.0)
        }
    } else {
        (-x).exp() / (1.0 + (eta - x).exp())
    }
}

/// Complete Fermi–Dirac integral F_j(η) = ∫₀^∞ x^j dx / (e^{x−η} + 1) for j > −1,
/// without the 1/Γ(j+1) normalization.
pub fn fermi_dirac_integral(j: f64, eta: f64) -> Result<Scaled> {
    require(j > -1.0, "Fermi-Dirac order j", "greater than -1", j)?;
    require(eta.is_finite(), "reduced chemical potential eta", "finite", eta)?;

    let tol = Tolerance::default();
    let knee = eta.max(0.0);
    let x_split = knee + TAIL_OFFSET;
    // x = u² removes the x^j endpoint behaviour.
    let body = |u: f64| 2.0 * u.powf(2.0 * j + 1.0) * scaled_occupancy(u * u, eta);

    let mut total = 0.0;
    let u_knee = knee.sqrt();
    if u_knee > 0.0 {
        total += integrate(body, 0.0, u_knee, tol)?.value;
    }
    total += integrate(body, u_knee, x_split.sqrt(), tol)?.value;
    total += integrate_tail(|x: f64| x.powf(j) * scaled_occupancy(x, eta), x_split, tol)?.value;

    Ok(Scaled {
        value: total,
        log_scale: eta.min(0.0),
    })
}

fn thermal_energy(temperature: f64) -> Result<f64> {
    require(
        temperature > 0.0 && temperature.is_finite(),
        "temperature T [K]",
        "positive (use the limit functions for T = 0)",
        temperature,
    )?;
    Ok(BOLTZMANN * temperature)
}

fn reduced_mu(mu: f64, kt: f64) -> Result<f64> {
    require(!mu.is_nan(), "chemical potential mu [eV]", "a number", mu)?;
    Ok(mu * ELECTRON_VOLT / kt)
}

fn density_prefactor() -> f64 {
    SQRT_2 * ELECTRON_MASS.powf(1.5) / (PI * PI * HBAR.powi(3))
}

fn ln_density_at_eta(eta: f64, kt: f64) -> Result<f64> {
    Ok(density_prefactor().ln() + 1.5 * kt.ln() + fermi_dirac_integral(0.5, eta)?.ln())
}

/// Electron number density [cm⁻³] at chemical potential `mu` [eV] and temperature [K].
pub fn density_of_mu(mu: f64, temperature: f64) -> Result<f64> {
    let kt = thermal_energy(temperature)?;
    if mu == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let eta = reduced_mu(mu, kt)?;
    Ok(ln_density_at_eta(eta, kt)?.exp())
}

/// Pressure [erg/cm³] at chemical potential `mu` [eV] and temperature [K].
pub fn pressure_of_mu(mu: f64, temperature: f64) -> Result<f64> {
    let kt = thermal_energy(temperature)?;
    if mu == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let eta = reduced_mu(mu, kt)?;
    let f = fermi_dirac_integral(1.5, eta)?;
    let ln_p = (2.0 * density_prefactor() / 3.0).ln() + 2.5 * kt.ln() + f.ln();
    Ok(ln_p.exp())
}

pub fn eos_point(mu: f64, temperature: f64) -> Result<EosPoint> {
    Ok(EosPoint {
        mu,
        temperature,
        density: density_of_mu(mu, temperature)?,
        pressure: pressure_of_mu(mu, temperature)?,
    })
}

/// Chemical potential [eV] at which the density equals `n0` [cm⁻³].
pub fn mu_of_density(n0: f64, temperature: f64) -> Result<f64> {
    require(n0 > 0.0 && n0.is_finite(), "electron density n0 [cm^-3]", "positive and finite", n0)?;
    let kt = thermal_energy(temperature)?;
    let target = n0.ln();
    let residual = |eta: f64| ln_density_at_eta(eta, kt).map(|l| l - target);

    // Boltzmann occupancy overestimates n, the T = 0 step underestimates it,
    // so the two closed forms bracket the root from either side.
    let eta_classical = classical_mu(n0, temperature)? * ELECTRON_VOLT / kt;
    let eta_fermi = fermi_energy(n0)? * ELECTRON_VOLT / kt;
    let mut lo = eta_classical - 1.0;
    let mut hi = eta_fermi.max(eta_classical) + 1.0;

    let mut widen = 1.0;
    for _ in 0..60 {
        let glo = residual(lo)?;
        let ghi = residual(hi)?;
        if glo <= 0.0 && ghi >= 0.0 {
            let opts = RootOptions {
                bisect_width: 1e-3,
                ftol: 1e-12,
                max_iter: 400,
            };
            let eta = find_root(residual, lo, hi, opts)?;
            return Ok(eta * kt / ELECTRON_VOLT);
        }
        if glo > 0.0 {
            lo -= widen;
        }
        if ghi < 0.0 {
            hi += widen;
        }
        widen *= 2.0;
    }
    Err(Error::Convergence {
        lo: lo * kt / ELECTRON_VOLT,
        hi: hi * kt / ELECTRON_VOLT,
    })
}

/// Thermal quantum concentration 2(m k_BT / 2πħ²)^{3/2} [cm⁻³].
pub fn quantum_concentration(temperature: f64) -> Result<f64> {
    let kt = thermal_energy(temperature)?;
    Ok(2.0 * (ELECTRON_MASS * kt / (2.0 * PI * HBAR * HBAR)).powf(1.5))
}

/// Maxwell–Boltzmann density [cm⁻³] at `mu` [eV].
pub fn classical_density(mu: f64, temperature: f64) -> Result<f64> {
    let kt = thermal_energy(temperature)?;
    Ok(quantum_concentration(temperature)? * (mu * ELECTRON_VOLT / kt).exp())
}

/// Maxwell–Boltzmann chemical potential [eV] at density `n0`.
pub fn classical_mu(n0: f64, temperature: f64) -> Result<f64> {
    require(n0 > 0.0, "electron density n0 [cm^-3]", "positive", n0)?;
    let kt = thermal_energy(temperature)?;
    Ok(kt * (n0 / quantum_concentration(temperature)?).ln() / ELECTRON_VOLT)
}

/// Fermi energy (ħ²/2m)(3π²n0)^{2/3} [eV].
pub fn fermi_energy(n0: f64) -> Result<f64> {
    require(n0 > 0.0, "electron density n0 [cm^-3]", "positive", n0)?;
    Ok(HBAR * HBAR / (2.0 * ELECTRON_MASS) * (3.0 * PI * PI * n0).powf(2.0 / 3.0) / ELECTRON_VOLT)
}

/// Zero-temperature density (2mμ)^{3/2}/(3π²ħ³) [cm⁻³]; zero for μ ≤ 0.
pub fn degenerate_density(mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    (2.0 * ELECTRON_MASS * mu * ELECTRON_VOLT).powf(1.5) / (3.0 * PI * PI * HBAR.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_order_classical_limit() {
        // F_{1/2}(η) → Γ(3/2) e^η for η → −∞.
        let f = fermi_dirac_integral(0.5, -30.0).unwrap();
        assert_relative_eq!(f.value, PI.sqrt() / 2.0, max_relative = 1e-12);
        assert_eq!(f.log_scale, -30.0);
    }

    #[test]
    fn zero_order_closed_form() {
        // F_0(η) = ln(1 + e^η).
        for &eta in &[-5.0, -0.3, 0.0, 2.0, 17.0] {
            let f = fermi_dirac_integral(0.0, eta).unwrap().get();
            let exact = if eta > 0.0 { eta + (-eta).exp().ln_1p() } else { eta.exp().ln_1p() };
            assert_relative_eq!(f, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn degenerate_leading_term() {
        // F_{3/2}(η) ≈ (2/5)η^{5/2}(1 + 5π²/(8η²)).
        let eta = 400.0_f64;
        let f = fermi_dirac_integral(1.5, eta).unwrap().get();
        let s = 0.4 * eta.powf(2.5) * (1.0 + 5.0 * PI * PI / (8.0 * eta * eta));
        assert_relative_eq!(f, s, max_relative = 1e-8);
    }

    #[test]
    fn empty_band() {
        assert_eq!(density_of_mu(f64::NEG_INFINITY, 300.0).unwrap(), 0.0);
        assert!(density_of_mu(-1e3, 300.0).unwrap() < 1e-300);
        assert!(pressure_of_mu(-50.0, 300.0).unwrap() < 1e-100);
    }

    #[test]
    fn rejects_zero_temperature() {
        assert!(matches!(density_of_mu(1.0, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(mu_of_density(1e20, -3.0), Err(Error::Domain { .. })));
        assert!(matches!(mu_of_density(0.0, 300.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn fermi_energy_of_copper_density() {
        // n0 = 8.47e22 cm⁻³ gives the textbook 7.0 eV.
        assert!((fermi_energy(8.47e22).unwrap() - 7.0).abs() < 0.05);
    }

    #[test]
    fn round_trip_extremes() {
        for &(n0, t) in &[(1e10, 300.0), (1e14, 300.0), (1e22, 300.0), (1e24, 300.0), (1e22, 1e5), (1e20, 1.0)] {
            let mu = mu_of_density(n0, t).unwrap();
            let back = density_of_mu(mu, t).unwrap();
            assert_relative_eq!(back, n0, max_relative = 1e-9);
        }
    }
}

//! Laboratory units ↔ plasmon units.
//!
//! The plasmon unit system is fixed by the equilibrium density alone:
//! ω_p = √(4π n₀ e²/m), E_p = ħω_p, k_p = √(2mE_p)/ħ, l_p = 1/k_p and
//! v_p = ħk_p/m. Temperature is carried along for the equation of state.

use crate::constants::{CM_PER_NM, ELECTRON_MASS, ELECTRON_VOLT, ELEMENTARY_CHARGE, HBAR};
use crate::error::{require, Result};
use std::f64::consts::PI;

/// Plasmon scales of an electron gas at density `density` and temperature `temperature`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    /// Equilibrium electron number density [cm⁻³].
    pub density: f64,
    /// Temperature [K].
    pub temperature: f64,
    /// Plasmon energy E_p [eV].
    pub plasmon_energy: f64,
    /// Plasma frequency ω_p [rad/s].
    pub plasma_frequency: f64,
    /// Plasmon wavenumber k_p [cm⁻¹].
    pub wavenumber: f64,
    /// Plasmon length l_p [nm].
    pub length: f64,
    /// Plasmon speed v_p [cm/s].
    pub speed: f64,
}

impl PhysicalScales {
    pub fn derive(density: f64, temperature: f64) -> Result<Self> {
        require(
            density > 0.0 && density.is_finite(),
            "electron density n0 [cm^-3]",
            "positive and finite",
            density,
        )?;
        require(
            temperature >= 0.0 && temperature.is_finite(),
            "temperature T [K]",
            "non-negative and finite",
            temperature,
        )?;

        let plasma_frequency =
            (4.0 * PI * density * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / ELECTRON_MASS).sqrt();
        let energy_erg = HBAR * plasma_frequency;
        let wavenumber = (2.0 * ELECTRON_MASS * energy_erg).sqrt() / HBAR;

        Ok(Self {
            density,
            temperature,
            plasmon_energy: energy_erg / ELECTRON_VOLT,
            plasma_frequency,
            wavenumber,
            length: 1.0 / wavenumber / CM_PER_NM,
            speed: HBAR * wavenumber / ELECTRON_MASS,
        })
    }

    /// Plasmon energy in erg.
    pub fn plasmon_energy_erg(&self) -> f64 {
        self.plasmon_energy * ELECTRON_VOLT
    }

    /// Plasmon length in cm.
    pub fn length_cm(&self) -> f64 {
        self.length * CM_PER_NM
    }

    /// Time unit 1/ω_p in seconds.
    pub fn time_unit(&self) -> f64 {
        1.0 / self.plasma_frequency
    }

    pub fn length_to_normalized(&self, nm: f64) -> f64 {
        nm / self.length
    }

    pub fn length_from_normalized(&self, x: f64) -> f64 {
        x * self.length
    }

    pub fn energy_to_normalized(&self, ev: f64) -> f64 {
        ev / self.plasmon_energy
    }

    pub fn energy_from_normalized(&self, e: f64) -> f64 {
        e * self.plasmon_energy
    }

    pub fn time_to_normalized(&self, seconds: f64) -> f64 {
        seconds * self.plasma_frequency
    }

    pub fn time_from_normalized(&self, t: f64) -> f64 {
        t / self.plasma_frequency
    }

    pub fn speed_to_normalized(&self, cm_per_s: f64) -> f64 {
        cm_per_s / self.speed
    }

    pub fn speed_from_normalized(&self, v: f64) -> f64 {
        v * self.speed
    }
}

/// Free-function form of [`PhysicalScales::derive`].
pub fn derive_scales(density: f64, temperature: f64) -> Result<PhysicalScales> {
    PhysicalScales::derive(density, temperature)
}

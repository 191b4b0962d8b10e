//! CODATA 2018 constants in Gaussian CGS units.
//!
//! Values are exact where the 2019 SI redefinition made them exact, and carry
//! the full published digits otherwise, so every derived quantity is
//! bit-reproducible.

/// Reduced Planck constant [erg s].
pub const HBAR: f64 = 1.054_571_817e-27;

/// Electron mass [g].
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;

/// Speed of light [cm/s].
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;

/// Elementary charge in SI coulombs (exact).
pub const ELEMENTARY_CHARGE_SI: f64 = 1.602_176_634e-19;

/// Elementary charge [statC]: e[C] · c[cm/s] / 10.
pub const ELEMENTARY_CHARGE: f64 = ELEMENTARY_CHARGE_SI * SPEED_OF_LIGHT / 10.0;

/// Boltzmann constant [erg/K] (exact).
pub const BOLTZMANN: f64 = 1.380_649e-16;

/// One electron volt [erg] (exact).
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-12;

/// Centimetres per nanometre.
pub const CM_PER_NM: f64 = 1e-7;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statcoulomb_value() {
        assert!((ELEMENTARY_CHARGE / 4.803_204_71e-10 - 1.0).abs() < 1e-9);
    }
}

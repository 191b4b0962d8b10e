//! 2D slices of the two-pole field: channel grids, currents and their
//! divergence, electric field, fringe spectra and pixel-averaged magnitudes.

mod detector;
mod divergence;
mod grid;
mod spectrum;

pub use detector::{detector_subsamples, evaluate_magnitudes, MagnitudeGrid};
pub use divergence::divergence_2d;
pub use grid::{
    complex_norm, electric_field, evaluate_grid, evaluate_grid_on, norm2, Channel, Current, FieldGrid, Lattice,
};
pub use spectrum::{
    fringe_contrast, fringe_spectrum, probe_channel, spectrum_of_samples, Spectrum, MIN_PROBE_SAMPLES,
};

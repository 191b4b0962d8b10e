//! Closed-form solutions of the coupled pseudoforce system
//!
//! Ψ″ + Φ + 2EΨ = 0,  Φ″ − Ψ = 0
//!
//! in one dimension (even cosine pair) and in three dimensions (point poles).

mod line;
mod orbital;
mod pole;

pub use line::{eval_1d, eval_1d_gradient, BoundaryConstants, LineSolution, ModeAmplitudes};
pub use orbital::{eval_dispersion, eval_time_phase, free_dispersion, Orbital};
pub use pole::{
    eval_dipole, eval_dipole_gradient, eval_monopole, sample_dipole, Branch, DipoleConfig, FieldSample,
};

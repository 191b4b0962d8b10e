use thiserror::Error;

/// Failures raised by the numerical kernels.
///
/// Payloads are stored as `f64` regardless of the scalar type the kernel ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{quantity} must be {requirement} (got {value})")]
    Domain {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("orbital energy E = {energy} must exceed the band edge E = 1 (α = √(E²−1) vanishes or is imaginary)")]
    DegenerateOrbital { energy: f64 },

    #[error("field evaluated {distance:e} plasmon lengths from the pole at x = {pole_x}")]
    Singularity { pole_x: f64, distance: f64 },

    #[error("root search failed to converge; last bracket [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64 },

    #[error("quadrature stalled at estimated error {error:e} (target {target:e}) after {intervals} intervals")]
    Quadrature {
        error: f64,
        target: f64,
        intervals: usize,
    },

    #[error("time step {step} exceeds 0.1/k2 = {limit}; the fast k2 oscillation would be unresolved, use h ≤ {limit}")]
    StepTooLarge { step: f64, limit: f64 },

    #[error("trajectory spans {span} time units but classification needs at least {required} (ten fast periods)")]
    InsufficientData { span: f64, required: f64 },

    #[error("wavefunction node: density {density:e} below the node threshold")]
    Node { density: f64 },

    #[error("grid spacing {spacing} gives {points_per_wavelength:.2} points per fast wavelength; at least 8 are required")]
    Resolution {
        spacing: f64,
        points_per_wavelength: f64,
    },

    #[error("signal along the probe is flat; no spectral peak")]
    NoPeak,

    #[error("probe crosses a masked cell near ({x}, {y})")]
    MaskedProbe { x: f64, y: f64 },

    #[error("channel `{0}` is not available on this grid")]
    MissingChannel(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require(
    ok: bool,
    quantity: &'static str,
    requirement: &'static str,
    value: f64,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity,
            requirement,
            value,
        })
    }
}

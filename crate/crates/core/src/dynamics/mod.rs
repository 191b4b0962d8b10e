//! Test-particle trajectories in the 1D potential, Bohmian guiding velocities
//! and streamline tracing of planar vector fields.

mod bohm;
mod field;
mod stream;

pub use bohm::{bohmian_velocity, probability_current, StateField, NODE_THRESHOLD};
pub use field::{classify_trajectory, integrate_field_trajectory, max_field_step, Motion, TestParticle, Trajectory};
pub use stream::{
    trace_streamline, trace_streamlines, DipoleFlow, FlowKind, Sample, StreamOptions, Streamline, Termination,
    VectorField2, POLE_RADIUS, STAGNATION,
};

//! Quasiparticle model of a degenerate electron gas.
//!
//! Positions are in plasmon lengths l_p, energies in plasmon energies E_p and
//! times in 1/ω_p unless a function says otherwise. [`scales`] converts to and
//! from laboratory units and [`eos`] gives the chemical potential of the gas.
//!
//! The numerical kernels are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod constants;
pub mod dynamics;
pub mod eos;
pub mod error;
pub mod fieldmaps;
pub mod geom;
pub mod num;
pub mod pseudoforce;
pub mod quad;
pub mod roots;
pub mod scales;

pub use error::{Error, Result};
pub use num::Real;
pub use scales::{derive_scales, PhysicalScales};

pub type Orbital64 = pseudoforce::Orbital<f64>;
pub type BoundaryConstants64 = pseudoforce::BoundaryConstants<f64>;
pub type LineSolution64 = pseudoforce::LineSolution<f64>;
pub type DipoleConfig64 = pseudoforce::DipoleConfig<f64>;
pub type TestParticle64 = dynamics::TestParticle<f64>;
pub type Trajectory64 = dynamics::Trajectory<f64>;
pub type Streamline64 = dynamics::Streamline<f64>;
pub type Rect64 = geom::Rect<f64>;
pub type FieldGrid64 = fieldmaps::FieldGrid<f64>;
pub type MagnitudeGrid64 = fieldmaps::MagnitudeGrid<f64>;

pub type Orbital32 = pseudoforce::Orbital<f32>;
pub type DipoleConfig32 = pseudoforce::DipoleConfig<f32>;
pub type FieldGrid32 = fieldmaps::FieldGrid<f32>;

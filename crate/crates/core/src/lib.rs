//! Branching random motion on the Poincaré half-plane: simulation, closed
//! forms for the mean hyperbolic distance of the center of mass, and the
//! checks tying the two together.

pub mod analytics;
pub mod cascade;
pub mod error;
pub mod hypgeo;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

pub type CartesianPointF64 = hypgeo::CartesianPoint<f64>;
pub type DiskPointF64 = hypgeo::DiskPoint<f64>;
pub type HyperbolicPolarF64 = hypgeo::HyperbolicPolar<f64>;
pub type IsometryF64 = hypgeo::Isometry<f64>;
pub type RateSpeedF64 = analytics::RateSpeed<f64>;
pub type SplinterLawF64 = analytics::SplinterLaw<f64>;

//! Numerical laboratory for critical-point statistics of spherical pure
//! p-spin landscapes: closed-form complexity curves and thresholds, the
//! conditional Hessian covariance structure with an independent
//! Schur-complement oracle, GOE determinant-moment machinery, Kac-Rice
//! first/second moment pipelines, and direct small-N landscape enumeration.

pub mod complexity;
pub mod covariance;
pub mod error;
pub mod linalg;
pub mod mc;
pub mod oracle;
pub mod params;
pub mod quad;

pub use error::{Error, Result};
pub use mc::MomentEstimate;
pub use params::ModelParams;

//! Ordinal mechanisms for social choice and facility assignment when the
//! distances between facilities are known, with exact worst-case distortion
//! audits over every metric consistent with the agents' rankings.
//!
//! Everything numeric is generic over [`Scalar`]: `f32`, `f64` and the exact
//! [`Rational`].

pub mod assignment;
pub mod audit;
pub mod constructions;
pub mod error;
pub mod io;
pub mod lp;
pub mod model;
pub mod random;
pub mod repro;
pub mod scalar;
pub mod social_choice;
pub mod solvers;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact arbitrary-precision scalar.
pub type Rational = num_rational::BigRational;

pub type Distances = model::FacilityDistances<f64>;
pub type Metric = model::FullMetric<f64>;
pub type Report = audit::AuditReport<f64>;
pub type ExactDistances = model::FacilityDistances<Rational>;
pub type ExactMetric = model::FullMetric<Rational>;
pub type ExactReport = audit::AuditReport<Rational>;

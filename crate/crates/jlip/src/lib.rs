//! Hyperbolic-type metrics (distance-ratio, hyperbolic, quasihyperbolic) on
//! canonical domains, Moebius and holomorphic maps between them, and
//! numeric certification of their sharp Lipschitz distortion constants.
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (f64 and f32 are provided); the `*64` aliases at the crate root cover
//! the common case.

pub mod distortion;
pub mod domain;
pub mod error;
pub mod geom;
pub mod holo;
pub mod lemmas;
pub mod metrics;
pub mod moebius;
pub mod qh;
pub mod scalar;

pub use distortion::{DistortionReport, MapUnderTest, SearchBudget};
pub use domain::Domain;
pub use error::{Error, Result};
pub use geom::{ExtendedPoint, Generator, OrthogonalMatrix, Vector};
pub use holo::HolomorphicMap;
pub use moebius::MoebiusMap;
pub use scalar::Real;

/// f64 vector.
pub type Vector64 = geom::Vector<f64>;
/// f64 extended point.
pub type ExtendedPoint64 = geom::ExtendedPoint<f64>;
/// f64 domain.
pub type Domain64 = domain::Domain<f64>;
/// f64 Moebius word.
pub type MoebiusMap64 = moebius::MoebiusMap<f64>;
/// f64 holomorphic map.
pub type HolomorphicMap64 = holo::HolomorphicMap<f64>;

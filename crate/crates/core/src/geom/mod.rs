//! Upper half-plane geometry: Möbius isometries with exact entries,
//! horoballs with exact tangent points, and floating-point measurements.

mod horoball;
mod isometry;
mod point;

pub use horoball::{tangent, Contact, Cusp, Horoball};
pub use isometry::{FloatMobius, Isometry};
pub use point::{ball_area, from_disk, hyp_distance, to_disk, HPoint};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(String),
    #[error("distance needs interior points")]
    BoundaryPoint,
    #[error("radius must be nonnegative, got {0}")]
    NegativeRadius(f64),
    #[error("horoball size must be positive, got {0}")]
    NonPositiveSize(String),
}

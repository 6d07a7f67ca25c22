//! Exact scalar arithmetic.
//!
//! Three families of numbers are needed by the rest of the crate:
//!
//! * arbitrary precision integers and rationals (`num-bigint` / `num-rational`)
//!   for `PSL(2, Z)` and the Ford packing,
//! * golden integers `Z[λ]` and golden rationals `Q(λ)`, `λ = (1 + √5) / 2`,
//!   for the Hecke group `G5` and the pentagonal packing,
//! * dyadic residues `Z / 2^N`, the finite-precision stand-in for the 2-adic
//!   horoball indices.

mod dyadic;
mod golden;
mod scalar;

pub use dyadic::{DyadicRes, MAX_PRECISION};
pub use golden::{GoldenInt, GoldenRational};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: u32, right: u32 },
    #[error("precision {0} outside 1..=64")]
    InvalidPrecision(u32),
    #[error("{0} is even and has no inverse among dyadic integers")]
    NotAUnit(i128),
    #[error("shift {m} outside 0..={max} at precision {precision}")]
    ShiftOutOfRange { m: u32, max: u32, precision: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed dyadic bit string: {0}")]
    MalformedBits(String),
}

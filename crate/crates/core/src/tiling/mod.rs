//! Horoball packings, their dyadic labellings, and the tilings built on them.

mod degenerate;
mod labels;
mod layers;
mod packing;

pub use degenerate::{Core, DegenerateTiling};
pub use labels::{neighbor_values, AnyApprox, LabeledApprox, Model, ModelScalar, State};
pub use layers::{layer_tiles, theta_n, tile_left, Prong, TilePlacement, Tiling, Truncated};
pub use packing::{
    canonical_frame, cusp_field, enumerate_ford, enumerate_hecke, hecke_ball, hecke_base_cusps, hecke_generators,
    CuspField, CuspFieldReport, HoroPacking, PackingScalar, PackingSource,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("packing is empty")]
    EmptyPacking,
    #[error("base cell is missing from the packing")]
    MissingBase,
    #[error("inconsistent propagation: {0}")]
    Inconsistent(String),
    #[error("invalid labelling: {0}")]
    Invalid(String),
    #[error("malformed tiling file: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

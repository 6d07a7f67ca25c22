//! Group actions on dyadic labels of trivalent and pentavalent trees.
//!
//! A state is a tuple of horoball indices read around an oriented edge of the
//! tree dual to a packing. `PSL(2, Z)` acts on pairs through `C` and `L`, the
//! Hecke group `G5` on quadruples through `P` and `L`.

mod groups;
mod labels;
mod orbit;
mod sanov;
mod word;

pub use groups::{matrix_of_word, Hecke5, MatrixGroup, Modular};
pub use labels::{
    act_c_tri, act_l_pent, act_l_tri, act_p_pent, act_word_pent, act_word_tri, pent_lattice_det,
    LabelPair, LabelQuad,
};
pub use orbit::{orbit_pent, orbit_tri, Orbit, MAX_STATE_BITS};
pub use sanov::{
    coset_index_e, exponent_sums, fixes_all_pairs, free_check, in_e, in_translation_lattice,
    kernel_check, label_map, same_coset, AffineLabelMap, CosetAnomaly, CosetReport,
    FreeCheckReport, KernelCheckReport,
};
pub use word::{Gen, Word};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("symbol {symbol} is not available in the {context}")]
    ForeignSymbol { symbol: char, context: &'static str },
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("{0} is not a word in L^±2, R^±2")]
    NotSanovWord(String),
    #[error("state space of 2^{bits} tuples exceeds the 2^{max} limit")]
    StateSpaceTooLarge { bits: u32, max: u32 },
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

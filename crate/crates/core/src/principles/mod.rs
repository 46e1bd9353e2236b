//! Desk-scale versions of the combinatorial principles tied to size-change
//! termination.
//!
//! Infinite colorings are represented as eventually periodic ones
//! ([`EpColoring`]), so "occurs infinitely often" becomes "occurs in the
//! period". [`coloring`] holds the pigeonhole witness and the triangle search
//! on pair colorings; [`reversal`] builds the graph family that reduces the
//! pigeonhole principle to size-change termination and simulates the
//! choice-function multipath for a given coloring.

use thiserror::Error;

pub mod coloring;
pub mod reversal;

pub use coloring::{
    induced_coloring, spp_witness, star_search, EpColoring, PairColoring, StarWitness,
};
pub use reversal::{
    active_sets, build_reversal_multipath, check_claim_ax, chi_step, graph_for, index_sets,
    reduction_signature, spp_reduction_family, warmup_family, ChoiceState, IndexSet, ReversalRun,
    ReversalStep, MAX_FAMILY_K, MAX_K,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrinciplesError {
    #[error("number of colors {k} outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("color {color} is not below {k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("coloring period must be nonempty")]
    EmptyPeriod,
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("invalid choice state: {0}")]
    InvalidChoice(String),
}

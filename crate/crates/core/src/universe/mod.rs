//! Hereditarily finite sets, abstract parameters, hulls and Δ0 truth.

mod eval;
mod hull;
mod set;

pub use eval::{eval_delta0, member};
pub use hull::Hull;
pub use set::{DeskSet, HfSet, Param};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("{0}")]
    Parse(String),
}

/// Why a Δ0 sentence could not be given a truth value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("not a sentence: {0}")]
    NotSentence(String),
    #[error("not a bounded formula: {0}")]
    NotDelta0(String),
    #[error("truth depends on an abstract parameter: {0}")]
    Abstract(String),
}

//! Infinitary operator-controlled derivations `P ⊢^α_m Γ`, written as finite
//! terms whose last inference is computed on demand.

mod check;
mod deriv;
mod embed;
mod eval;
mod rules;
mod trace;
mod transform;

pub use check::{check_local, Report, Sampler, Violation};
pub use deriv::{Deriv, Sig};
pub use embed::embedding_bound;
pub use eval::{eval_cutfree, eval_cutfree_with, Verdict};
pub use rules::{RuleTag, RuleView};
pub use trace::{render, trace, TraceFormat, TraceRow};

use thiserror::Error;

use crate::universe::EvalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivError {
    #[error("construction error: {0}")]
    Construction(String),
    #[error("index outside the index set: {0}")]
    Index(String),
    /// The answer depends on an abstract parameter.
    #[error("undecided: {0}")]
    Open(String),
    #[error("ill-formed derivation: {0}")]
    Invalid(String),
}

impl From<EvalError> for DerivError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Abstract(_) => DerivError::Open(e.to_string()),
            _ => DerivError::Invalid(e.to_string()),
        }
    }
}

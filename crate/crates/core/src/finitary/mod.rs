//! The finitary one-sided sequent calculus for KPΠ_{N+1}.

mod axiom;
mod build;
mod check;
mod proof;
mod script;

pub use axiom::Axiom;
pub use build::ProofBuilder;
pub use check::{check_proof, diagnostics, Diagnostic};
pub use proof::{NodeId, Proof, ProofNode, Rule};
pub use script::{parse_script, to_script};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinitaryError {
    #[error("line {line}: {msg}")]
    Script { line: usize, msg: String },
}

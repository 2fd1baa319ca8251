//! Ordinal notations below ε_{Ω+1}.

mod cnf;
mod code;
mod parse;

pub use cnf::Cnf;
pub use code::OrdCode;
pub use parse::{ordering_word, parse_ord, parse_query, OrdQuery};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    #[error("malformed ordinal code: {0}")]
    Malformed(String),
    #[error("ordinal parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

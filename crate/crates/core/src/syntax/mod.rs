//! Negation-normal formulas of the language of set theory with `ad`.

mod decompose;
mod formula;
mod parse;
mod sequent;
mod sexpr;

pub use decompose::{decompose, index_set, instance, structural_polarity, Decomposition, Index, IndexSet, Polarity};
pub use formula::{fresh_var, Class, Formula, Level, Node, Term, Var};
pub use parse::{
    formula_from_sexpr, parse_formula, parse_formula_with, parse_sequent, parse_term, sequent_from_sexpr, ParamTable,
};
pub use sequent::Sequent;
pub use sexpr::{parse_sexpr, parse_sexprs, Sexpr};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("formula is not in negation normal form: {0}")]
    NotNegationNormal(String),
}

//! The ⋁/⋀ reading of sentences.

use std::fmt;

use crate::universe::{eval_delta0, DeskSet, EvalError};

use super::formula::{Formula, Node, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Disjunctive,
    Conjunctive,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Disjunctive => Polarity::Conjunctive,
            Polarity::Conjunctive => Polarity::Disjunctive,
        }
    }
}

/// The index set J of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Empty,
    Two,
    BoundedBy(DeskSet),
    Universe,
}

/// A member of an index set: a branch of a binary connective or a set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Branch(u8),
    Set(DeskSet),
}

impl Index {
    pub fn set(&self) -> Option<&DeskSet> {
        match self {
            Index::Set(s) => Some(s),
            Index::Branch(_) => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Branch(b) => write!(f, "#{b}"),
            Index::Set(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl IndexSet {
    /// Membership of `i` in J. Membership in a parameter is unknown.
    pub fn contains(&self, i: &Index) -> Result<bool, EvalError> {
        match (self, i) {
            (IndexSet::Empty, _) => Ok(false),
            (IndexSet::Two, Index::Branch(b)) => Ok(*b < 2),
            (IndexSet::Two, Index::Set(_)) => Ok(false),
            (_, Index::Branch(_)) => Ok(false),
            (IndexSet::Universe, Index::Set(_)) => Ok(true),
            (IndexSet::BoundedBy(a), Index::Set(b)) => crate::universe::member(b, a),
        }
    }

    /// The finite members of J, if J can be listed.
    pub fn enumerate(&self) -> Option<Vec<Index>> {
        match self {
            IndexSet::Empty => Some(Vec::new()),
            IndexSet::Two => Some(vec![Index::Branch(0), Index::Branch(1)]),
            IndexSet::BoundedBy(DeskSet::Concrete(a)) => {
                Some(a.members().map(|m| Index::Set(DeskSet::Concrete(m.clone()))).collect())
            }
            IndexSet::BoundedBy(DeskSet::Abstract(_)) | IndexSet::Universe => None,
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Empty => write!(f, "empty"),
            IndexSet::Two => write!(f, "two"),
            IndexSet::BoundedBy(a) => write!(f, "in {a}"),
            IndexSet::Universe => write!(f, "V"),
        }
    }
}

/// `A ≃ ⋁(A_ι)_{ι∈J}` or `A ≃ ⋀(A_ι)_{ι∈J}`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub polarity: Polarity,
    pub index_set: IndexSet,
    formula: Formula,
}

impl Decomposition {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// A_ι. The caller is responsible for `ι ∈ J`.
    pub fn instance(&self, i: &Index) -> Option<Formula> {
        if self.index_set == IndexSet::Empty {
            return None;
        }
        instance(&self.formula, i)
    }
}

/// The immediate subformula A_ι read off the syntax alone. For Δ0 formulas
/// this ignores that the index set is empty.
pub fn instance(a: &Formula, i: &Index) -> Option<Formula> {
    match (a.node(), i) {
        (Node::Or(x, _) | Node::And(x, _), Index::Branch(0)) => Some(x.clone()),
        (Node::Or(_, y) | Node::And(_, y), Index::Branch(1)) => Some(y.clone()),
        (Node::BEx(v, _, b) | Node::BAll(v, _, b) | Node::Ex(v, b) | Node::All(v, b), Index::Set(s)) => {
            Some(b.subst(v, &Term::Name(s.clone())))
        }
        _ => None,
    }
}

/// J as fixed by the syntax alone: empty for Δ0, whatever the truth value.
/// `None` if a quantifier bound is still a variable.
pub fn index_set(a: &Formula) -> Option<IndexSet> {
    if a.is_delta0() {
        return Some(IndexSet::Empty);
    }
    Some(match a.node() {
        Node::Or(..) | Node::And(..) => IndexSet::Two,
        Node::BEx(_, t, _) | Node::BAll(_, t, _) => IndexSet::BoundedBy(t.denotation()?),
        _ => IndexSet::Universe,
    })
}

/// Assigns the ⋁/⋀ reading. Δ0 sentences are read by their truth value with
/// an empty index set; this needs them to be evaluable.
pub fn decompose(a: &Formula) -> Result<Decomposition, EvalError> {
    if !a.is_sentence() {
        return Err(EvalError::NotSentence(a.to_string()));
    }
    let polarity = match structural_polarity(a) {
        Some(p) => p,
        None if eval_delta0(a)? => Polarity::Conjunctive,
        None => Polarity::Disjunctive,
    };
    let index_set = index_set(a).ok_or_else(|| EvalError::NotSentence(a.to_string()))?;
    Ok(Decomposition {
        polarity,
        index_set,
        formula: a.clone(),
    })
}

/// Polarity of a sentence whose reading does not depend on truth, i.e. any
/// non-Δ0 sentence.
pub fn structural_polarity(a: &Formula) -> Option<Polarity> {
    if a.is_delta0() {
        return None;
    }
    Some(match a.node() {
        Node::Or(..) | Node::BEx(..) | Node::Ex(..) => Polarity::Disjunctive,
        _ => Polarity::Conjunctive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn delta0_sentences_read_by_truth() {
        let d = decompose(&p("(in 0 0)")).unwrap();
        assert_eq!((d.polarity, d.index_set), (Polarity::Disjunctive, IndexSet::Empty));
        let d = decompose(&p("(in 0 {{}})")).unwrap();
        assert_eq!((d.polarity, d.index_set), (Polarity::Conjunctive, IndexSet::Empty));
    }

    #[test]
    fn bounded_existential_ranges_over_its_bound() {
        let a = p("(bex x {{},{{}}} (ex y (in x y)))");
        let d = decompose(&a).unwrap();
        assert_eq!(d.polarity, Polarity::Disjunctive);
        let bound = match &d.index_set {
            IndexSet::BoundedBy(b) => b.clone(),
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(bound.to_string(), "{{},{{}}}");
        let inst = d.instance(&Index::Set(DeskSet::empty())).unwrap();
        assert_eq!(inst, p("(ex y (in {} y))"));
    }

    #[test]
    fn unbounded_universal_ranges_over_v() {
        let d = decompose(&p("(all x (ex y (in x y)))")).unwrap();
        assert_eq!((d.polarity, d.index_set), (Polarity::Conjunctive, IndexSet::Universe));
    }

    #[test]
    fn open_formulas_are_rejected() {
        assert!(matches!(decompose(&p("(in x 0)")), Err(EvalError::NotSentence(_))));
    }
}

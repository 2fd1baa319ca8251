use std::collections::BTreeSet;
use std::fmt;

use crate::universe::DeskSet;

use super::formula::{Formula, Var};

/// A finite set of formulas, read disjunctively.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent(BTreeSet<Formula>);

impl Sequent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: Formula) -> Self {
        Sequent(BTreeSet::from([a]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Formula) -> bool {
        self.0.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn with(&self, a: Formula) -> Sequent {
        let mut s = self.clone();
        s.0.insert(a);
        s
    }

    pub fn without(&self, a: &Formula) -> Sequent {
        let mut s = self.clone();
        s.0.remove(a);
        s
    }

    pub fn union(&self, other: &Sequent) -> Sequent {
        Sequent(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &Sequent) -> bool {
        self.0.is_subset(&other.0)
    }

    /// k(Γ) = ⋃ k(A).
    pub fn support(&self) -> BTreeSet<DeskSet> {
        self.0.iter().flat_map(Formula::support).collect()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(Formula::free_vars).collect()
    }

    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Sequent {
        self.0.iter().map(f).collect()
    }
}

impl FromIterator<Formula> for Sequent {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Sequent(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Sequent {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(seq")?;
        for a in &self.0 {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

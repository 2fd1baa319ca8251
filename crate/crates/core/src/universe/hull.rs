use std::collections::BTreeSet;
use std::fmt;

use crate::ord::OrdCode;

use super::{DeskSet, Param};

/// A finite description of a set-closure hull. Hereditarily finite sets and
/// the ordinal codes of this crate lie in every hull, so only the abstract
/// generators are recorded.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hull(BTreeSet<Param>);

impl Hull {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generated_by<'a>(sets: impl IntoIterator<Item = &'a DeskSet>) -> Self {
        Hull::new().extend_all(sets)
    }

    /// `P ∪ {s}`.
    pub fn extend(&self, s: &DeskSet) -> Hull {
        match s {
            DeskSet::Concrete(_) => self.clone(),
            DeskSet::Abstract(p) if self.0.contains(p) => self.clone(),
            DeskSet::Abstract(p) => {
                let mut g = self.0.clone();
                g.insert(p.clone());
                Hull(g)
            }
        }
    }

    pub fn extend_all<'a>(&self, sets: impl IntoIterator<Item = &'a DeskSet>) -> Hull {
        let mut g = self.0.clone();
        g.extend(sets.into_iter().filter_map(|s| match s {
            DeskSet::Abstract(p) => Some(p.clone()),
            DeskSet::Concrete(_) => None,
        }));
        Hull(g)
    }

    pub fn union(&self, other: &Hull) -> Hull {
        Hull(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains_set(&self, s: &DeskSet) -> bool {
        match s {
            DeskSet::Concrete(_) => true,
            DeskSet::Abstract(p) => self.0.contains(p),
        }
    }

    pub fn contains_ord(&self, _: &OrdCode) -> bool {
        true
    }

    pub fn contains_all<'a>(&self, sets: impl IntoIterator<Item = &'a DeskSet>) -> bool {
        sets.into_iter().all(|s| self.contains_set(s))
    }

    pub fn is_subhull(&self, other: &Hull) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Param> {
        self.0.iter()
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Hull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Hull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::HfSet;

    fn param(name: &str) -> DeskSet {
        Param::parse_decl(&format!("param {name} rank w+1")).unwrap().into()
    }

    #[test]
    fn extension_is_monotone_and_idempotent() {
        let h = Hull::new();
        let p = param("p");
        assert!(!h.contains_set(&p));
        let h1 = h.extend(&p);
        assert!(h1.contains_set(&p));
        assert!(h.is_subhull(&h1));
        assert_eq!(h1.extend(&p), h1);
        assert_eq!(h1.extend(&HfSet::von_neumann(3).into()), h1);
    }

    #[test]
    fn extension_commutes() {
        let (p, q) = (param("p"), param("q"));
        let h = Hull::new();
        assert_eq!(h.extend(&p).extend(&q), h.extend(&q).extend(&p));
        assert_eq!(h.extend(&p).extend(&q).to_string(), "H[@p,@q]");
    }
}

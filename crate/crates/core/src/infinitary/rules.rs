use std::fmt;

use crate::syntax::{index_set, instance, Formula, Index, IndexSet, Term};
use crate::universe::{DeskSet, Hull};

use super::deriv::{premise_hull, Deriv, Family, Kind};
use super::DerivError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    Vee,
    Wedge,
    Cut,
    Ref,
}

impl RuleTag {
    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Vee => "vee",
            RuleTag::Wedge => "wedge",
            RuleTag::Cut => "cut",
            RuleTag::Ref => "ref",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone)]
enum Premises {
    One(Deriv),
    Two(Deriv, Deriv),
    Family(Option<Family>),
}

/// The last inference of a derivation: tag, the formula it acts on, its index
/// set and access to the premises.
#[derive(Clone)]
pub struct RuleView {
    tag: RuleTag,
    formula: Formula,
    index_set: IndexSet,
    index: Option<Index>,
    reflection: Option<(Term, Formula)>,
    hull: Hull,
    premises: Premises,
}

impl RuleView {
    pub(crate) fn of_explicit(e: &Deriv) -> Result<RuleView, DerivError> {
        let hull = e.hull().clone();
        let j = |f: &Formula| index_set(f).unwrap_or(IndexSet::Empty);
        Ok(match e.kind() {
            Kind::Vee { main, index, sub } => RuleView {
                tag: RuleTag::Vee,
                formula: main.clone(),
                index_set: j(main),
                index: Some(index.clone()),
                reflection: None,
                hull,
                premises: Premises::One(sub.clone()),
            },
            Kind::Wedge { main, family } => RuleView {
                tag: RuleTag::Wedge,
                formula: main.clone(),
                index_set: if family.is_some() { j(main) } else { IndexSet::Empty },
                index: None,
                reflection: None,
                hull,
                premises: Premises::Family(family.clone()),
            },
            Kind::Cut { c, left, right } => RuleView {
                tag: RuleTag::Cut,
                formula: c.clone(),
                index_set: IndexSet::Two,
                index: None,
                reflection: None,
                hull,
                premises: Premises::Two(left.clone(), right.clone()),
            },
            Kind::Ref {
                a,
                c,
                target,
                left,
                right,
            } => RuleView {
                tag: RuleTag::Ref,
                formula: a.clone(),
                index_set: IndexSet::Two,
                index: None,
                reflection: Some((c.clone(), target.clone())),
                hull,
                premises: Premises::Two(left.clone(), right.clone()),
            },
            _ => return Err(DerivError::Invalid(format!("{e:?} is not an explicit inference"))),
        })
    }

    pub fn tag(&self) -> RuleTag {
        self.tag
    }

    /// The main formula of (⋁)/(⋀), the cut formula C, or A(c) for (Ref).
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// J of the main formula for (⋁)/(⋀); `Two` for (cut) and (Ref).
    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    /// The chosen ι of a (⋁).
    pub fn index(&self) -> Option<&Index> {
        self.index.as_ref()
    }

    /// `(c, ∃z[ad^z ∧ c∈z ∧ A^z])` for (Ref).
    pub fn reflection(&self) -> Option<(&Term, &Formula)> {
        self.reflection.as_ref().map(|(c, t)| (c, t))
    }

    /// The premise indices, when they can be listed.
    pub fn indices(&self) -> Option<Vec<Index>> {
        match &self.premises {
            Premises::One(_) => self.index.clone().map(|i| vec![i]),
            Premises::Two(..) => Some(vec![Index::Branch(0), Index::Branch(1)]),
            Premises::Family(_) => self.index_set.enumerate(),
        }
    }

    /// The formula premise ι adds to the conclusion.
    pub fn added(&self, i: &Index) -> Option<Formula> {
        match (self.tag, i) {
            (RuleTag::Vee | RuleTag::Wedge, _) => instance(&self.formula, i),
            (RuleTag::Cut, Index::Branch(0)) => Some(self.formula.negate()),
            (RuleTag::Cut, Index::Branch(1)) => Some(self.formula.clone()),
            (RuleTag::Ref, Index::Branch(0)) => Some(self.formula.clone()),
            (RuleTag::Ref, Index::Branch(1)) => self.reflection.as_ref().map(|(_, t)| t.negate()),
            _ => None,
        }
    }

    /// The abstract generators of the hull at this node.
    pub fn hull_generators(&self) -> Vec<DeskSet> {
        self.hull.generators().cloned().map(DeskSet::Abstract).collect()
    }

    /// The hull premise ι has to live in.
    pub fn premise_hull(&self, i: &Index) -> Hull {
        premise_hull(self.tag, &self.hull, i)
    }

    /// Premise ι. For (⋀) over V any set may be supplied.
    pub fn premise(&self, i: &Index) -> Result<Deriv, DerivError> {
        match &self.premises {
            Premises::One(d) if Some(i) == self.index.as_ref() => Ok(d.clone()),
            Premises::Two(l, _) if *i == Index::Branch(0) => Ok(l.clone()),
            Premises::Two(_, r) if *i == Index::Branch(1) => Ok(r.clone()),
            Premises::Family(Some(family)) => match self.index_set.contains(i) {
                Ok(true) => family(i),
                Ok(false) => Err(DerivError::Index(format!("{i} for {}", self.formula))),
                Err(e) => Err(DerivError::Open(e.to_string())),
            },
            _ => Err(DerivError::Index(format!("{i} for {}", self.formula))),
        }
    }
}

impl fmt::Debug for RuleView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.tag, self.formula)?;
        if let Some(i) = &self.index {
            write!(f, " at {i}")?;
        }
        write!(f, " over {}", self.index_set)
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::ord::{parse_ord, Cnf, OrdCode};

use super::UniverseError;

/// A hereditarily finite set in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HfSet(Arc<BTreeSet<HfSet>>);

impl HfSet {
    pub fn empty() -> Self {
        HfSet::default()
    }

    pub fn from_members<I: IntoIterator<Item = HfSet>>(it: I) -> Self {
        HfSet(Arc::new(it.into_iter().collect()))
    }

    pub fn members(&self) -> impl Iterator<Item = &HfSet> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.contains(x)
    }

    /// `{self, other}`.
    pub fn pair(&self, other: &HfSet) -> HfSet {
        HfSet::from_members([self.clone(), other.clone()])
    }

    pub fn singleton(&self) -> HfSet {
        HfSet::from_members([self.clone()])
    }

    pub fn union(&self) -> HfSet {
        HfSet::from_members(self.members().flat_map(|m| m.members().cloned()))
    }

    /// von Neumann natural `n`.
    pub fn von_neumann(n: u32) -> HfSet {
        (0..n).fold(HfSet::empty(), |acc, _| {
            let mut s: BTreeSet<HfSet> = (*acc.0).clone();
            s.insert(acc.clone());
            HfSet(Arc::new(s))
        })
    }

    pub fn rank(&self) -> u64 {
        self.members().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// Number of braces in the literal.
    pub fn size(&self) -> usize {
        1 + self.members().map(HfSet::size).sum::<usize>()
    }

    /// Ackermann coding: n = Σ 2^{code(m)} over members m. `None` when the
    /// code does not fit in 64 bits.
    pub fn ackermann(&self) -> Option<u64> {
        let mut n: u64 = 0;
        for m in self.members() {
            let k = m.ackermann()?;
            if k >= 64 {
                return None;
            }
            n |= 1 << k;
        }
        Some(n)
    }

    pub fn from_ackermann(n: u64) -> HfSet {
        HfSet::from_members((0..64u64).filter(|k| n >> k & 1 == 1).map(HfSet::from_ackermann))
    }

    /// All members of the transitive closure.
    pub fn transitive_closure(&self) -> BTreeSet<HfSet> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<&HfSet> = self.members().collect();
        while let Some(x) = stack.pop() {
            if out.insert(x.clone()) {
                stack.extend(x.members());
            }
        }
        out
    }

    /// Every hereditarily finite set of rank below `r`, ordered by rank, then
    /// size, then canonical order. `r ≤ 4`.
    pub fn all_below_rank(r: u32) -> Vec<HfSet> {
        assert!(r <= 4, "V_5 is too large to enumerate");
        let count: u64 = match r {
            0 => 0,
            1 => 1,
            2 => 2,
            3 => 4,
            4 => 16,
            _ => unreachable!(),
        };
        let mut v: Vec<HfSet> = (0..count).map(HfSet::from_ackermann).collect();
        v.sort_by_key(|s| (s.rank(), s.size(), s.clone()));
        v
    }

    pub fn parse(s: &str) -> Result<HfSet, UniverseError> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let set = parse_braces(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(UniverseError::Parse(format!("trailing input in set literal {s:?}")));
        }
        Ok(set)
    }
}

fn parse_braces(b: &[u8], pos: &mut usize) -> Result<HfSet, UniverseError> {
    if b.get(*pos) != Some(&b'{') {
        return Err(UniverseError::Parse("expected '{'".into()));
    }
    *pos += 1;
    let mut members = BTreeSet::new();
    if b.get(*pos) == Some(&b'}') {
        *pos += 1;
        return Ok(HfSet::empty());
    }
    loop {
        members.insert(parse_braces(b, pos)?);
        match b.get(*pos) {
            Some(b',') => *pos += 1,
            Some(b'}') => {
                *pos += 1;
                return Ok(HfSet(Arc::new(members)));
            }
            _ => return Err(UniverseError::Parse("expected ',' or '}'".into())),
        }
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A named parameter standing in for a set outside the hereditarily finite
/// fragment. Only its declared rank is known.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    name: Arc<str>,
    rank: Cnf,
}

impl Param {
    pub fn new(name: &str, rank: Cnf) -> Self {
        Param {
            name: Arc::from(name),
            rank,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> &Cnf {
        &self.rank
    }

    /// Parses a declaration `param <name> rank <ordinal>`; the ordinal must lie below Ω.
    pub fn parse_decl(line: &str) -> Result<Param, UniverseError> {
        let mut words = line.split_whitespace();
        let (Some("param"), Some(name), Some("rank")) = (words.next(), words.next(), words.next()) else {
            return Err(UniverseError::Parse(format!(
                "expected `param <name> rank <ordinal>`, got {line:?}"
            )));
        };
        let rest: Vec<&str> = words.collect();
        let rank = parse_ord(&rest.join(" ")).map_err(|e| UniverseError::Parse(e.to_string()))?;
        match rank {
            OrdCode::Sub(c) => Ok(Param::new(name, c)),
            other => Err(UniverseError::Parse(format!("parameter rank {other} is not below W"))),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.name)
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}:{}", self.name, self.rank)
    }
}

/// An element of the desk-scale universe.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeskSet {
    Concrete(HfSet),
    Abstract(Param),
}

impl DeskSet {
    pub fn empty() -> Self {
        DeskSet::Concrete(HfSet::empty())
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self, DeskSet::Concrete(_))
    }

    pub fn as_concrete(&self) -> Option<&HfSet> {
        match self {
            DeskSet::Concrete(s) => Some(s),
            DeskSet::Abstract(_) => None,
        }
    }

    /// rank(a) = sup{rank(b)+1 : b ∈ a}; declared for parameters.
    pub fn rank(&self) -> OrdCode {
        match self {
            DeskSet::Concrete(s) => OrdCode::nat(s.rank()),
            DeskSet::Abstract(p) => OrdCode::Sub(p.rank.clone()),
        }
    }
}

impl From<HfSet> for DeskSet {
    fn from(s: HfSet) -> Self {
        DeskSet::Concrete(s)
    }
}

impl From<Param> for DeskSet {
    fn from(p: Param) -> Self {
        DeskSet::Abstract(p)
    }
}

impl fmt::Display for DeskSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeskSet::Concrete(s) => write!(f, "{s}"),
            DeskSet::Abstract(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for DeskSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeskSet::Concrete(s) => write!(f, "{s}"),
            DeskSet::Abstract(p) => write!(f, "{p:?}"),
        }
    }
}

//! Cantor normal form notations for ordinals below ε₀.

use std::cmp::Ordering;
use std::fmt;

/// An ordinal below ε₀ written as `ω^e₁·c₁ + … + ω^eₖ·cₖ` with
/// `e₁ > … > eₖ` and every `cᵢ ≥ 1`. The empty sum is zero.
///
/// On normal forms the derived ordering is the ordinal ordering: terms are
/// compared exponent first, then coefficient, and a proper prefix is smaller.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cnf(Vec<(Cnf, u64)>);

impl Cnf {
    pub fn zero() -> Self {
        Cnf(Vec::new())
    }

    pub fn one() -> Self {
        Cnf::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Cnf::zero()
        } else {
            Cnf(vec![(Cnf::zero(), n)])
        }
    }

    pub fn omega() -> Self {
        Cnf::omega_pow(Cnf::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Cnf) -> Self {
        Cnf(vec![(e, 1)])
    }

    /// Builds a notation from raw terms without normalizing.
    pub fn from_terms(terms: Vec<(Cnf, u64)>) -> Self {
        Cnf(terms)
    }

    pub fn terms(&self) -> &[(Cnf, u64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.0.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// Additively principal: a single term with coefficient one.
    pub fn is_principal(&self) -> bool {
        matches!(self.0.as_slice(), [(_, 1)])
    }

    /// The leading exponent, `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Cnf> {
        self.0.first().map(|(e, _)| e)
    }

    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|(e, c)| *c > 0 && e.is_normal()) && self.0.windows(2).all(|w| w[0].0 > w[1].0)
    }

    /// Ordinal sum. Terms of `self` below the leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Cnf) -> Cnf {
        let Some((lead, lead_c)) = rhs.0.first() else {
            return self.clone();
        };
        let mut out: Vec<(Cnf, u64)> = Vec::with_capacity(self.0.len() + rhs.0.len());
        for (e, c) in &self.0 {
            match e.cmp(lead) {
                Ordering::Greater => out.push((e.clone(), *c)),
                Ordering::Equal => {
                    out.push((e.clone(), c + lead_c));
                    out.extend(rhs.0[1..].iter().cloned());
                    return Cnf(out);
                }
                Ordering::Less => break,
            }
        }
        out.extend(rhs.0.iter().cloned());
        Cnf(out)
    }

    /// Hessenberg natural sum.
    pub fn nat_sum(&self, rhs: &Cnf) -> Cnf {
        let mut out: Vec<(Cnf, u64)> = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < rhs.0.len() {
            let (a, b) = (&self.0[i], &rhs.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(rhs.0[j..].iter().cloned());
        Cnf(out)
    }

    /// `self + 1`.
    pub fn succ(&self) -> Cnf {
        self.add(&Cnf::one())
    }

    /// The principal summands in non-increasing order, one per unit of coefficient.
    pub fn principal_parts(&self) -> impl Iterator<Item = Cnf> + '_ {
        self.0
            .iter()
            .flat_map(|(e, c)| std::iter::repeat_n(e, *c as usize))
            .map(|e| Cnf::omega_pow(e.clone()))
    }

    /// Number of nodes in the notation tree.
    pub fn size(&self) -> usize {
        1 + self.0.iter().map(|(e, _)| e.size()).sum::<usize>()
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            match e.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None if *e == Cnf::omega() => write!(f, "w^w")?,
                None => write!(f, "w^({e})")?,
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

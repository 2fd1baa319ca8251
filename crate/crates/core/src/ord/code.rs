use std::cmp::Ordering;
use std::fmt;

use super::cnf::Cnf;
use super::OrdError;

/// Code of an ordinal below ε_{Ω+1}.
///
/// * `Sub(β)` codes a set-theoretic ordinal β < Ω.
/// * `Omega` codes Ω itself. Since ω^Ω = Ω under this coding, Ω is additively principal.
/// * `WPow(a)` codes ω^a for a > Ω.
/// * `Sum(parts)` codes α₁ + … + αₙ > Ω, n ≥ 2, with additively principal and
///   non-increasing parts.
///
/// Values are kept in normal form. Constructors that could break it go
/// through [`OrdCode::validate`]; the arithmetic in this module always
/// returns normal forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum OrdCode {
    Sub(Cnf),
    Omega,
    WPow(Box<OrdCode>),
    Sum(Vec<OrdCode>),
}

impl OrdCode {
    pub fn zero() -> Self {
        OrdCode::Sub(Cnf::zero())
    }

    pub fn nat(n: u64) -> Self {
        OrdCode::Sub(Cnf::nat(n))
    }

    pub fn omega_small() -> Self {
        OrdCode::Sub(Cnf::omega())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, OrdCode::Sub(c) if c.is_zero())
    }

    pub fn as_sub(&self) -> Option<&Cnf> {
        match self {
            OrdCode::Sub(c) => Some(c),
            _ => None,
        }
    }

    /// Additively principal: ω^β for some β.
    pub fn is_principal(&self) -> bool {
        match self {
            OrdCode::Sub(c) => c.is_principal(),
            OrdCode::Omega | OrdCode::WPow(_) => true,
            OrdCode::Sum(_) => false,
        }
    }

    /// Additive decomposition into principal parts, largest first.
    pub fn parts(&self) -> Vec<OrdCode> {
        match self {
            OrdCode::Sub(c) => c.principal_parts().map(OrdCode::Sub).collect(),
            OrdCode::Omega | OrdCode::WPow(_) => vec![self.clone()],
            OrdCode::Sum(ps) => ps.clone(),
        }
    }

    /// Reassembles a normal code from a non-increasing list of principal parts.
    fn from_parts(parts: Vec<OrdCode>) -> OrdCode {
        match parts.first() {
            None => OrdCode::zero(),
            Some(OrdCode::Sub(_)) => {
                let mut acc = Cnf::zero();
                for p in &parts {
                    if let OrdCode::Sub(c) = p {
                        acc = acc.add(c);
                    }
                }
                OrdCode::Sub(acc)
            }
            Some(_) if parts.len() == 1 => parts.into_iter().next().unwrap(),
            Some(_) => OrdCode::Sum(parts),
        }
    }

    /// Total order on normal codes.
    pub fn cmp_code(&self, other: &OrdCode) -> Ordering {
        match (self, other) {
            (OrdCode::Sub(a), OrdCode::Sub(b)) => a.cmp(b),
            (OrdCode::Omega, OrdCode::Omega) => Ordering::Equal,
            (OrdCode::WPow(a), OrdCode::WPow(b)) => a.cmp_code(b),
            _ => {
                let (pa, pb) = (self.parts(), other.parts());
                for (x, y) in pa.iter().zip(pb.iter()) {
                    match cmp_principal(x, y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                pa.len().cmp(&pb.len())
            }
        }
    }

    /// Ordinal sum.
    pub fn add(&self, rhs: &OrdCode) -> OrdCode {
        if let (OrdCode::Sub(a), OrdCode::Sub(b)) = (self, rhs) {
            return OrdCode::Sub(a.add(b));
        }
        let right = rhs.parts();
        let Some(head) = right.first() else {
            return self.clone();
        };
        let mut out: Vec<OrdCode> = self
            .parts()
            .into_iter()
            .take_while(|p| cmp_principal(p, head) != Ordering::Less)
            .collect();
        out.extend(right);
        OrdCode::from_parts(out)
    }

    /// Natural (commutative) sum.
    pub fn nat_sum(&self, rhs: &OrdCode) -> OrdCode {
        if let (OrdCode::Sub(a), OrdCode::Sub(b)) = (self, rhs) {
            return OrdCode::Sub(a.nat_sum(b));
        }
        let mut out = self.parts();
        out.extend(rhs.parts());
        out.sort_by(|x, y| cmp_principal(y, x));
        OrdCode::from_parts(out)
    }

    /// ω^self. Below Ω this is computed in CNF; ω^Ω is Ω; above Ω it is a `WPow`.
    pub fn omega_exp(&self) -> OrdCode {
        match self {
            OrdCode::Sub(c) => OrdCode::Sub(Cnf::omega_pow(c.clone())),
            OrdCode::Omega => OrdCode::Omega,
            _ => OrdCode::WPow(Box::new(self.clone())),
        }
    }

    /// ω_n(self) with ω_0(x) = x and ω_{k+1}(x) = ω^{ω_k(x)}.
    pub fn omega_tower(&self, n: u32) -> OrdCode {
        (0..n).fold(self.clone(), |acc, _| acc.omega_exp())
    }

    /// `self · n`, by repeated ordinal addition.
    pub fn mul_nat(&self, n: u64) -> OrdCode {
        (0..n).fold(OrdCode::zero(), |acc, _| acc.add(self))
    }

    /// `n` copies of `self` combined by natural sum.
    pub fn nat_mul(&self, n: u64) -> OrdCode {
        (0..n).fold(OrdCode::zero(), |acc, _| acc.nat_sum(self))
    }

    pub fn succ(&self) -> OrdCode {
        self.add(&OrdCode::nat(1))
    }

    /// Ω·m.
    pub fn omega_times(m: u64) -> OrdCode {
        OrdCode::Omega.mul_nat(m)
    }

    /// Tree size: `Sub` leaves count as one node.
    pub fn size(&self) -> usize {
        match self {
            OrdCode::Sub(_) | OrdCode::Omega => 1,
            OrdCode::WPow(a) => 1 + a.size(),
            OrdCode::Sum(ps) => 1 + ps.iter().map(OrdCode::size).sum::<usize>(),
        }
    }

    /// True iff every node satisfies the normal-form invariants.
    pub fn is_normal(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<(), OrdError> {
        match self {
            OrdCode::Sub(c) => {
                if c.is_normal() {
                    Ok(())
                } else {
                    Err(OrdError::Malformed(format!("sub-Omega part {c:?} not in CNF")))
                }
            }
            OrdCode::Omega => Ok(()),
            OrdCode::WPow(a) => {
                a.validate()?;
                if a.cmp_code(&OrdCode::Omega) == Ordering::Greater {
                    Ok(())
                } else {
                    Err(OrdError::Malformed(format!("exponent {a} of w^(..) must exceed W")))
                }
            }
            OrdCode::Sum(ps) => {
                if ps.len() < 2 {
                    return Err(OrdError::Malformed("sum needs at least two parts".into()));
                }
                for p in ps {
                    p.validate()?;
                    if !p.is_principal() {
                        return Err(OrdError::Malformed(format!("sum part {p} is not additively principal")));
                    }
                }
                if cmp_principal(&ps[0], &OrdCode::Omega) == Ordering::Less {
                    return Err(OrdError::Malformed("sum must start at or above W".into()));
                }
                if ps.windows(2).any(|w| cmp_principal(&w[0], &w[1]) == Ordering::Less) {
                    return Err(OrdError::Malformed("sum parts must be non-increasing".into()));
                }
                Ok(())
            }
        }
    }

    /// The sub-Ω value, if the code lies below Ω.
    pub fn below_omega(&self) -> Option<&Cnf> {
        self.as_sub()
    }
}

/// Order on additively principal codes: ω^a ≤ ω^b iff a ≤ b, reading Ω as ω^Ω.
fn cmp_principal(x: &OrdCode, y: &OrdCode) -> Ordering {
    fn class(p: &OrdCode) -> u8 {
        match p {
            OrdCode::Sub(_) => 0,
            OrdCode::Omega => 1,
            _ => 2,
        }
    }
    match (x, y) {
        (OrdCode::Sub(a), OrdCode::Sub(b)) => a.cmp(b),
        (OrdCode::WPow(a), OrdCode::WPow(b)) => a.cmp_code(b),
        _ => class(x).cmp(&class(y)),
    }
}

impl PartialOrd for OrdCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_code(other)
    }
}

impl fmt::Display for OrdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdCode::Sub(c) => write!(f, "{c}"),
            OrdCode::Omega => write!(f, "W"),
            OrdCode::WPow(a) => write!(f, "w^({a})"),
            OrdCode::Sum(ps) => {
                // Runs of equal parts print as `p*k`, the finite tail as one CNF.
                let split = ps.iter().position(|p| p.as_sub().is_some()).unwrap_or(ps.len());
                let mut first = true;
                let mut i = 0;
                while i < split {
                    let run = ps[i..split].iter().take_while(|p| **p == ps[i]).count();
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    write!(f, "{}", ps[i])?;
                    if run > 1 {
                        write!(f, "*{run}")?;
                    }
                    i += run;
                }
                if split < ps.len() {
                    write!(f, "+{}", OrdCode::from_parts(ps[split..].to_vec()))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for OrdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

//! Weakening, stripping of false Δ0 formulas, inversion, Reduction and
//! predicative cut-elimination.

use crate::syntax::{instance, structural_polarity, Formula, Index, Polarity};
use crate::universe::{eval_delta0, DeskSet};

use super::deriv::{copy_rule, Deriv, Kind, Sig, Target};
use super::DerivError;

fn truth(c: &Formula) -> Result<bool, DerivError> {
    Ok(eval_delta0(c)?)
}

impl Deriv {
    /// Removes a false Δ0 sentence `c` from the end sequent.
    pub fn strip(d: &Deriv, c: &Formula) -> Result<Deriv, DerivError> {
        if !d.seq().contains(c) {
            return Ok(d.clone());
        }
        if !c.is_delta0() || truth(c)? {
            return Err(DerivError::Construction(format!(
                "cannot strip {c}: not a false Delta0 sentence"
            )));
        }
        let sig = Sig::new(d.hull().clone(), d.bound().clone(), d.rank(), d.seq().without(c));
        Ok(Deriv::make(
            sig,
            Kind::Strip {
                inner: d.clone(),
                c: c.clone(),
            },
        ))
    }

    /// Inversion: from `P ⊢^α_m Γ, K` with `K ≃ ⋀(K_ι)` get `P(ι) ⊢^α_m Γ, K_ι`.
    pub fn invert(d: &Deriv, k: &Formula, i: &Index) -> Result<Deriv, DerivError> {
        if structural_polarity(k) != Some(Polarity::Conjunctive) {
            return Err(DerivError::Construction(format!(
                "inversion needs a conjunctive formula, got {k}"
            )));
        }
        let ki = instance(k, i).ok_or_else(|| DerivError::Index(format!("{i} for {k}")))?;
        let hull = match i {
            Index::Set(s) => d.hull().extend(s),
            Index::Branch(_) => d.hull().clone(),
        };
        let seq = d.seq().without(k).with(ki);
        let sig = Sig::new(hull, d.bound().clone(), d.rank(), seq);
        if !d.seq().contains(k) {
            return Deriv::weaken_to(d, sig);
        }
        Ok(Deriv::make(
            sig,
            Kind::Inv {
                inner: d.clone(),
                k: k.clone(),
                index: i.clone(),
            },
        ))
    }

    /// Reduction: from `P ⊢^α_m Δ, ¬C` and `P ⊢^β_m C, Γ` with `C` disjunctive
    /// and `dp(C) ≤ m`, get `P ⊢^{α+β}_m Δ, Γ`.
    pub fn reduce(c: &Formula, d0: &Deriv, d1: &Deriv) -> Result<Deriv, DerivError> {
        let nc = c.negate();
        let m = d0.rank().max(d1.rank());
        match structural_polarity(c) {
            Some(Polarity::Disjunctive) => {}
            Some(Polarity::Conjunctive) => {
                return Err(DerivError::Construction(format!("reduction on conjunctive {c}")));
            }
            None if truth(c)? => {
                return Err(DerivError::Construction(format!("reduction on true Delta0 {c}")));
            }
            None => {}
        }
        if c.depth() > m {
            return Err(DerivError::Construction(format!(
                "reduction needs dp({c}) = {} <= {m}",
                c.depth()
            )));
        }
        if !d0.seq().contains(&nc) {
            return Err(DerivError::Construction(format!(
                "reduction: {nc} missing from {}",
                d0.seq()
            )));
        }
        let seq = d0.seq().without(&nc).union(&d1.seq().without(c));
        let sig = Sig::new(d0.hull().union(d1.hull()), d0.bound().add(d1.bound()), m, seq);
        if !d1.seq().contains(c) {
            return Deriv::weaken_to(d1, sig);
        }
        Ok(Deriv::make(
            sig,
            Kind::Red {
                c: c.clone(),
                left: d0.clone(),
                right: d1.clone(),
            },
        ))
    }

    /// One round of predicative cut-elimination: rank m+1 to m, bound α to ω^α.
    pub fn elim(d: &Deriv) -> Result<Deriv, DerivError> {
        if d.rank() == 0 {
            return Err(DerivError::Construction("cut-elimination needs rank at least 1".into()));
        }
        let sig = Sig::new(d.hull().clone(), d.bound().omega_exp(), d.rank() - 1, d.seq().clone());
        Ok(Deriv::make(sig, Kind::Elim { inner: d.clone() }))
    }

    /// `elim` that leaves cut-free derivations alone, with a warning.
    pub fn elim_cuts(d: &Deriv) -> Result<Deriv, DerivError> {
        if d.rank() == 0 {
            log::warn!("elim_cuts on a derivation of rank 0 does nothing");
            return Ok(d.clone());
        }
        Deriv::elim(d)
    }
}

pub(crate) fn unfold_weak(this: &Deriv, inner: &Deriv) -> Result<Deriv, DerivError> {
    copy_rule(&inner.unfold()?, this.sig().clone(), |_, t, p| Deriv::fit(p, t))
}

pub(crate) fn unfold_strip(this: &Deriv, inner: &Deriv, c: &Formula) -> Result<Deriv, DerivError> {
    let e = inner.unfold()?;
    if let Kind::Vee { main, .. } | Kind::Wedge { main, .. } = e.kind() {
        if main == c {
            return Err(DerivError::Invalid(format!("false sentence {c} is a main formula")));
        }
    }
    let c = c.clone();
    copy_rule(&e, this.sig().clone(), move |_, t, p| {
        if t.added == c {
            Deriv::fit(p, t)
        } else {
            Deriv::fit(&Deriv::strip(p, &c)?, t)
        }
    })
}

pub(crate) fn unfold_inv(this: &Deriv, inner: &Deriv, k: &Formula, i: &Index) -> Result<Deriv, DerivError> {
    let e = inner.unfold()?;
    if let Kind::Wedge {
        main,
        family: Some(family),
    } = e.kind()
    {
        if main == k {
            let p = family(i)?;
            return Deriv::weaken_to(&Deriv::invert(&p, k, i)?, this.sig().clone())?.unfold();
        }
    }
    let (k, i) = (k.clone(), i.clone());
    copy_rule(&e, this.sig().clone(), move |_, t, p| {
        if t.added == k {
            Deriv::fit(p, t)
        } else {
            Deriv::fit(&Deriv::invert(p, &k, &i)?, t)
        }
    })
}

pub(crate) fn unfold_red(this: &Deriv, c: &Formula, d0: &Deriv, d1: &Deriv) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    if c.is_delta0() {
        return Deriv::weaken_to(&Deriv::strip(d1, c)?, sig)?.unfold();
    }
    let e = d1.unfold()?;
    if let Kind::Vee { main, index, sub } = e.kind() {
        if main == c {
            let ci = instance(c, index).ok_or_else(|| DerivError::Invalid(format!("{c} has no instance {index}")))?;
            // An index outside the hull cannot occur in C_ι, so C_ι = C_∅.
            let at = match index {
                Index::Set(s) if !sig.hull.contains_set(s) => {
                    let empty = Index::Set(DeskSet::empty());
                    if instance(c, &empty).as_ref() != Some(&ci) {
                        return Err(DerivError::Invalid(format!(
                            "{index} occurs in {ci} but not in the hull"
                        )));
                    }
                    empty
                }
                _ => index.clone(),
            };
            let left = Deriv::invert(d0, &c.negate(), &at)?;
            let left = Deriv::fit(&left, &Target::new(&sig, ci.negate(), sig.hull.clone()))?;
            let right = Deriv::reduce(c, d0, sub)?;
            let right = Deriv::fit(&right, &Target::new(&sig, ci.clone(), sig.hull.clone()))?;
            return Ok(Deriv::cut(sig, ci, left, right));
        }
    }
    let (c, d0) = (c.clone(), d0.clone());
    copy_rule(&e, sig, move |_, t, p| Deriv::fit(&Deriv::reduce(&c, &d0, p)?, t))
}

pub(crate) fn unfold_elim(this: &Deriv, inner: &Deriv) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let e = inner.unfold()?;
    if let Kind::Cut { c, left, right } = e.kind() {
        if c.depth() >= sig.rank {
            let (l, r) = (Deriv::elim(left)?, Deriv::elim(right)?);
            let disjunctive = match structural_polarity(c) {
                Some(p) => p == Polarity::Disjunctive,
                None => !truth(c)?,
            };
            let red = if disjunctive {
                Deriv::reduce(c, &l, &r)?
            } else {
                Deriv::reduce(&c.negate(), &r, &l)?
            };
            return Deriv::weaken_to(&red, sig)?.unfold();
        }
    }
    copy_rule(&e, sig, |_, t, p| Deriv::fit(&Deriv::elim(p)?, t))
}

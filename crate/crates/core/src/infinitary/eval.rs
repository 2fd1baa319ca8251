//! Truth certification for cut-free derivations over concrete sets.

use std::fmt;

use crate::universe::{eval_delta0, DeskSet};

use super::check::{Draw, Sampler};
use super::rules::RuleTag;
use super::{Deriv, DerivError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every expanded branch reached a true Δ0 member of its sequent.
    Verified,
    Inconclusive(String),
    /// A branch ended in an inference on a false sentence. Correctly built
    /// terms never produce this.
    Refuted(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        *self == Verdict::Verified
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (r @ Verdict::Refuted(_), _) | (_, r @ Verdict::Refuted(_)) => r,
            (i @ Verdict::Inconclusive(_), _) | (_, i @ Verdict::Inconclusive(_)) => i,
            _ => Verdict::Verified,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "verified-true"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive ({why})"),
            Verdict::Refuted(why) => write!(f, "refuted ({why})"),
        }
    }
}

/// [`eval_cutfree_with`] under the default sampler.
pub fn eval_cutfree(d: &Deriv, k: usize) -> Result<Verdict, DerivError> {
    eval_cutfree_with(d, k, &Sampler::Default)
}

/// Follows the derivation up to `k` inferences deep, looking for a true Δ0
/// sentence in each sequent. (⋀) over the whole universe is followed only on
/// the indices the sampler picks, so the verdict is about that fragment.
pub fn eval_cutfree_with(d: &Deriv, k: usize, sampler: &Sampler) -> Result<Verdict, DerivError> {
    if d.rank() != 0 {
        return Err(DerivError::Construction(format!(
            "evaluation needs rank 0, got {}",
            d.rank()
        )));
    }
    if let Some(p) = d.seq().support().into_iter().find(|s| !s.is_concrete()) {
        return Err(DerivError::Open(format!("abstract parameter {p}")));
    }
    let mut draw = Draw::new(sampler);
    certify(d, k, &mut draw)
}

fn certify(d: &Deriv, k: usize, draw: &mut Draw) -> Result<Verdict, DerivError> {
    for a in d.seq().iter().filter(|a| a.is_delta0()) {
        if eval_delta0(a)? {
            return Ok(Verdict::Verified);
        }
    }
    if k == 0 {
        return Ok(Verdict::Inconclusive("depth limit".into()));
    }
    let view = d.rule()?;
    match view.tag() {
        RuleTag::Ref => return Ok(Verdict::Inconclusive("reflection".into())),
        RuleTag::Cut => return Ok(Verdict::Inconclusive(format!("cut on {}", view.formula()))),
        RuleTag::Vee | RuleTag::Wedge => {}
    }
    let (indices, open) = draw.indices(&view);
    if indices.is_empty() && open == 0 {
        // A leaf on a Δ0 sentence would have been caught above.
        if view.formula().is_delta0() {
            return Ok(Verdict::Refuted(format!("inference on false {}", view.formula())));
        }
        return Ok(Verdict::Verified);
    }
    let mut verdict = if open > 0 {
        Verdict::Inconclusive("undecided index".into())
    } else {
        Verdict::Verified
    };
    for i in indices {
        if matches!(&i, crate::syntax::Index::Set(DeskSet::Abstract(_))) {
            continue;
        }
        verdict = verdict.and(certify(&view.premise(&i)?, k - 1, draw)?);
        if matches!(verdict, Verdict::Refuted(_)) {
            break;
        }
    }
    Ok(verdict)
}

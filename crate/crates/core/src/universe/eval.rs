use crate::syntax::{Formula, Node, Term};

use super::{DeskSet, EvalError};

/// `x ∈ y`. Decided for concrete `y`, except when `x` is a parameter of
/// small enough rank to possibly be a member.
pub fn member(x: &DeskSet, y: &DeskSet) -> Result<bool, EvalError> {
    match (x, y) {
        (DeskSet::Concrete(a), DeskSet::Concrete(b)) => Ok(b.contains(a)),
        (DeskSet::Abstract(_), DeskSet::Concrete(_)) if x.rank() >= y.rank() => Ok(false),
        _ => Err(EvalError::Abstract(format!("{x} in {y}"))),
    }
}

fn denote(t: &Term, whole: &Formula) -> Result<DeskSet, EvalError> {
    t.denotation().ok_or_else(|| EvalError::NotSentence(whole.to_string()))
}

/// Truth of a Δ0 sentence in the universe.
///
/// `ad^t` is false for every hereditarily finite `t`, since none of them
/// satisfies infinity; for a parameter it is unknown.
pub fn eval_delta0(a: &Formula) -> Result<bool, EvalError> {
    match a.node() {
        Node::Mem { pos, elem, set } => Ok(member(&denote(elem, a)?, &denote(set, a)?)? == *pos),
        Node::Ad { pos, of } => match denote(of, a)? {
            DeskSet::Concrete(_) => Ok(!*pos),
            DeskSet::Abstract(p) => Err(EvalError::Abstract(format!("ad {p}"))),
        },
        Node::Or(x, y) => either(eval_delta0(x), || eval_delta0(y), true),
        Node::And(x, y) => either(eval_delta0(x), || eval_delta0(y), false),
        Node::BEx(v, t, body) | Node::BAll(v, t, body) => {
            let exists = matches!(a.node(), Node::BEx(..));
            let bound = denote(t, a)?;
            let DeskSet::Concrete(s) = &bound else {
                return Err(EvalError::Abstract(format!("quantifier bounded by {bound}")));
            };
            // An existential is decided by one true instance even if others are
            // undecided; dually for a universal.
            let mut pending = None;
            for m in s.members() {
                let inst = body.subst(v, &Term::name(m.clone()));
                match eval_delta0(&inst) {
                    Ok(b) if b == exists => return Ok(exists),
                    Ok(_) => {}
                    Err(e) => pending = pending.or(Some(e)),
                }
            }
            pending.map_or(Ok(!exists), Err)
        }
        Node::Ex(..) | Node::All(..) => Err(EvalError::NotDelta0(a.to_string())),
    }
}

fn either(
    first: Result<bool, EvalError>,
    second: impl FnOnce() -> Result<bool, EvalError>,
    absorbing: bool,
) -> Result<bool, EvalError> {
    match first {
        Ok(b) if b == absorbing => Ok(b),
        Ok(_) => second(),
        Err(e) => match second() {
            Ok(b) if b == absorbing => Ok(b),
            _ => Err(e),
        },
    }
}

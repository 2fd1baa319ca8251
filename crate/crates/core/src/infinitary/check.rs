//! Bounded local checking of derivation terms.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::syntax::{structural_polarity, Index, IndexSet, Polarity};
use crate::universe::{eval_delta0, DeskSet, HfSet};

use super::deriv::Deriv;
use super::rules::{RuleTag, RuleView};
use super::DerivError;

/// How premises of a (⋀) over an unlisted index set are chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Sampler {
    /// The sets of rank below 3 by rank then size, then the hull generators.
    #[default]
    Default,
    /// `count` draws from the sets of rank below 4 and the hull generators.
    Seeded { seed: u64, count: usize },
}

/// Sampler state for one traversal.
pub(crate) struct Draw {
    sampler: Sampler,
    rng: ChaCha8Rng,
}

impl Draw {
    pub(crate) fn new(sampler: &Sampler) -> Draw {
        let seed = match sampler {
            Sampler::Seeded { seed, .. } => *seed,
            Sampler::Default => 0,
        };
        Draw {
            sampler: sampler.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn candidates(&mut self, view: &RuleView) -> Vec<Index> {
        let params = view.hull_generators();
        let pick: Vec<DeskSet> = match &self.sampler {
            Sampler::Default => HfSet::all_below_rank(3).into_iter().map(DeskSet::Concrete).collect(),
            Sampler::Seeded { count, .. } => {
                let pool: Vec<DeskSet> = HfSet::all_below_rank(4)
                    .into_iter()
                    .map(DeskSet::Concrete)
                    .chain(params.iter().cloned())
                    .collect();
                let mut out: Vec<DeskSet> = Vec::new();
                for _ in 0..*count {
                    if let Some(s) = pool.choose(&mut self.rng) {
                        if !out.contains(s) {
                            out.push(s.clone());
                        }
                    }
                }
                return out.into_iter().map(Index::Set).collect();
            }
        };
        pick.into_iter().chain(params).map(Index::Set).collect()
    }

    /// The premise indices to visit under `view`, and how many candidates
    /// were skipped because their membership in J is undecided.
    pub(crate) fn indices(&mut self, view: &RuleView) -> (Vec<Index>, usize) {
        if let Some(all) = view.indices() {
            return (all, 0);
        }
        let mut open = 0;
        let mut out = Vec::new();
        for i in self.candidates(view) {
            match view.index_set().contains(&i) {
                Ok(true) => out.push(i),
                Ok(false) => {}
                Err(_) => open += 1,
            }
        }
        (out, open)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Breadth-first number of the offending node, the root being 0.
    pub node: usize,
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}: {}", self.node, self.code, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub visited: usize,
    /// Checks that could not be decided because of abstract parameters.
    pub open: usize,
    pub violation: Option<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass: {} nodes, {} open", self.visited, self.open),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

type Check = Result<(), (&'static str, String)>;

fn fail(code: &'static str, message: String) -> Check {
    Err((code, message))
}

/// Checks the node itself: control, and the side conditions of its last
/// inference that do not involve premises. `n` is the reflection parameter N.
fn check_node(d: &Deriv, view: &RuleView, n: u32) -> Check {
    let sig = d.sig();
    if !sig.controlled() {
        return fail("control", format!("parameters of {} are not in {}", sig.seq, sig.hull));
    }
    let a = view.formula();
    match view.tag() {
        RuleTag::Vee | RuleTag::Wedge => {
            if !sig.seq.contains(a) {
                return fail("main-formula", format!("{a} is not in {}", sig.seq));
            }
            let want = if view.tag() == RuleTag::Vee {
                Polarity::Disjunctive
            } else {
                Polarity::Conjunctive
            };
            match structural_polarity(a) {
                Some(p) if p == want => {}
                Some(p) => return fail("polarity", format!("{} on {p:?} formula {a}", view.tag())),
                None => {
                    let leaf = view.tag() == RuleTag::Wedge && *view.index_set() == IndexSet::Empty;
                    match eval_delta0(a) {
                        Ok(true) if leaf => {}
                        Ok(_) => return fail("polarity", format!("{} on Delta0 sentence {a}", view.tag())),
                        Err(e) => return fail("polarity", format!("{a}: {e}")),
                    }
                }
            }
            if let Some(i) = view.index() {
                match view.index_set().contains(i) {
                    Ok(true) => {}
                    Ok(false) => return fail("index", format!("{i} is not in {} for {a}", view.index_set())),
                    Err(_) => {}
                }
            }
        }
        RuleTag::Cut => {
            if a.depth() >= sig.rank {
                return fail(
                    "cut-rank",
                    format!("dp({a}) = {} is not below rank {}", a.depth(), sig.rank),
                );
            }
        }
        RuleTag::Ref => {
            if !a.class().in_pi(n + 1) {
                return fail("reflection-class", format!("{a} is not Pi{}", n + 1));
            }
            let (c, target) = view.reflection().expect("reflection data");
            if !target.is_reflection_target(a, c) {
                return fail("reflection-shape", format!("{target} does not reflect {a} at {c}"));
            }
        }
    }
    Ok(())
}

/// Checks the passage from `d` to its premise ι.
fn check_premise(d: &Deriv, view: &RuleView, i: &Index, p: &Deriv) -> Check {
    let sig = d.sig();
    let ps = p.sig();
    let added = match view.added(i) {
        Some(f) => f,
        None => return fail("index", format!("{i} has no premise under {}", view.tag())),
    };
    let want = sig.seq.with(added);
    if ps.seq != want {
        return fail(
            "premise-sequent",
            format!("premise {i} ends in {}, expected {want}", ps.seq),
        );
    }
    if ps.rank > sig.rank {
        return fail(
            "premise-rank",
            format!("premise {i} has rank {} above {}", ps.rank, sig.rank),
        );
    }
    let hull = view.premise_hull(i);
    if !ps.hull.is_subhull(&hull) {
        return fail(
            "premise-hull",
            format!("premise {i} lives in {}, not in {hull}", ps.hull),
        );
    }
    if ps.bound >= sig.bound {
        return fail(
            "descent",
            format!("premise {i} has bound {} not below {}", ps.bound, sig.bound),
        );
    }
    Ok(())
}

/// Expands `d` breadth-first to depth `k` and checks every visited node.
/// `n` is the reflection parameter N of the system.
pub fn check_local(d: &Deriv, k: usize, sampler: &Sampler, n: u32) -> Report {
    let mut draw = Draw::new(sampler);
    let mut report = Report {
        visited: 0,
        open: 0,
        violation: None,
    };
    let mut queue: VecDeque<(Deriv, usize)> = VecDeque::from([(d.clone(), 0)]);
    while let Some((d, depth)) = queue.pop_front() {
        let id = report.visited;
        report.visited += 1;
        let violate = |code: &'static str, message: String| {
            Some(Violation {
                node: id,
                code,
                message,
            })
        };
        let view = match d.rule() {
            Ok(v) => v,
            Err(DerivError::Open(_)) => {
                report.open += 1;
                continue;
            }
            Err(e) => {
                report.violation = violate("unfold", format!("{d:?}: {e}"));
                return report;
            }
        };
        if let Err((code, message)) = check_node(&d, &view, n) {
            report.violation = violate(code, message);
            return report;
        }
        let (indices, open) = draw.indices(&view);
        report.open += open;
        for i in indices {
            let p = match view.premise(&i) {
                Ok(p) => p,
                Err(DerivError::Open(_)) => {
                    report.open += 1;
                    continue;
                }
                Err(e) => {
                    report.violation = violate("unfold", format!("premise {i} of {d:?}: {e}"));
                    return report;
                }
            };
            if let Err((code, message)) = check_premise(&d, &view, &i, &p) {
                report.violation = violate(code, message);
                return report;
            }
            if depth < k {
                queue.push_back((p, depth + 1));
            }
        }
    }
    report
}

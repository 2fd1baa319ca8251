use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::finitary::{NodeId, Proof};
use crate::ord::OrdCode;
use crate::syntax::{instance, Formula, Index, Sequent, Term, Var};
use crate::universe::{DeskSet, Hull};

use super::rules::{RuleTag, RuleView};
use super::DerivError;

/// The control data `P ⊢^α_m Γ` a term claims.
#[derive(Clone, PartialEq, Eq)]
pub struct Sig {
    pub hull: Hull,
    pub bound: OrdCode,
    pub rank: u32,
    pub seq: Sequent,
}

impl Sig {
    pub fn new(hull: Hull, bound: OrdCode, rank: u32, seq: Sequent) -> Self {
        Sig { hull, bound, rank, seq }
    }

    /// `k(Γ) ∪ {α} ⊂ P`.
    pub fn controlled(&self) -> bool {
        self.hull.contains_all(&self.seq.support()) && self.hull.contains_ord(&self.bound)
    }

    fn require_control(&self, what: &str) -> Result<(), DerivError> {
        if self.controlled() {
            Ok(())
        } else {
            Err(DerivError::Construction(format!(
                "{what}: parameters of {} are not in {}",
                self.seq, self.hull
            )))
        }
    }
}

impl fmt::Debug for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |-^{}_{} {}", self.hull, self.bound, self.rank, self.seq)
    }
}

/// A premise family of a (⋀) node, indexed by the members of J.
pub(crate) type Family = Arc<dyn Fn(&Index) -> Result<Deriv, DerivError> + Send + Sync>;

/// The induction formula of a foundation instance `F = B ∨ ∀x A(x)`.
#[derive(Clone, Debug)]
pub(crate) struct Schema {
    pub f: Formula,
    pub b: Formula,
    pub all: Formula,
    pub d: u32,
}

/// Conjuncts of a foundation counterexample and the pieces built from them.
impl Schema {
    pub fn from_instance(f: &Formula) -> Result<Schema, DerivError> {
        let b = instance(f, &Index::Branch(0));
        let all = instance(f, &Index::Branch(1));
        match (b, all) {
            (Some(b), Some(all)) => {
                let d = instance(&all, &Index::Set(DeskSet::empty()))
                    .map(|a| a.depth())
                    .unwrap_or(0);
                Ok(Schema {
                    f: f.clone(),
                    b,
                    all,
                    d,
                })
            }
            _ => Err(DerivError::Construction(format!("{f} is not a foundation instance"))),
        }
    }

    /// `∀y∈c A(y) ∧ ¬A(c)`.
    pub fn m(&self, c: &DeskSet) -> Formula {
        instance(&self.b, &Index::Set(c.clone())).expect("foundation counterexample")
    }

    /// `∀y∈c A(y)`.
    pub fn hyp(&self, c: &DeskSet) -> Formula {
        instance(&self.m(c), &Index::Branch(0)).expect("foundation hypothesis")
    }

    /// `A(c)`.
    pub fn a(&self, c: &DeskSet) -> Formula {
        instance(&self.m(c), &Index::Branch(1))
            .expect("foundation conclusion")
            .negate()
    }
}

/// A formula in the focus of a truth-directed derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Item {
    F(Formula),
    /// The second disjunct of an `Or` whose first disjunct was already added.
    OrSecond(Formula),
}

#[derive(Clone)]
pub(crate) struct EmbData {
    pub proof: Arc<Proof>,
    pub ranks: Arc<Vec<u32>>,
    pub node: NodeId,
    pub assign: Arc<Vec<(Var, DeskSet)>>,
}

#[derive(Clone)]
pub(crate) enum Kind {
    Taut {
        a: Formula,
    },
    Fund {
        a: DeskSet,
        schema: Arc<Schema>,
    },
    FundAt {
        b: DeskSet,
        schema: Arc<Schema>,
    },
    Truth {
        focus: Vec<Item>,
        pool: Arc<Vec<DeskSet>>,
    },
    Found {
        schema: Arc<Schema>,
    },
    Refl {
        a: Formula,
        c: Term,
        target: Formula,
    },
    Emb(EmbData),
    Weak {
        inner: Deriv,
    },
    Strip {
        inner: Deriv,
        c: Formula,
    },
    Inv {
        inner: Deriv,
        k: Formula,
        index: Index,
    },
    Red {
        c: Formula,
        left: Deriv,
        right: Deriv,
    },
    Elim {
        inner: Deriv,
    },
    Vee {
        main: Formula,
        index: Index,
        sub: Deriv,
    },
    Wedge {
        main: Formula,
        family: Option<Family>,
    },
    Cut {
        c: Formula,
        left: Deriv,
        right: Deriv,
    },
    Ref {
        a: Formula,
        c: Term,
        target: Formula,
        left: Deriv,
        right: Deriv,
    },
}

impl Kind {
    fn name(&self) -> &'static str {
        match self {
            Kind::Taut { .. } => "taut",
            Kind::Fund { .. } => "fund",
            Kind::FundAt { .. } => "fund-at",
            Kind::Truth { .. } => "truth",
            Kind::Found { .. } => "ax-found",
            Kind::Refl { .. } => "ax-ref",
            Kind::Emb(_) => "emb",
            Kind::Weak { .. } => "weak",
            Kind::Strip { .. } => "strip",
            Kind::Inv { .. } => "inv",
            Kind::Red { .. } => "red",
            Kind::Elim { .. } => "elim",
            Kind::Vee { .. } => "vee",
            Kind::Wedge { .. } => "wedge",
            Kind::Cut { .. } => "cut",
            Kind::Ref { .. } => "ref",
        }
    }

    fn is_explicit(&self) -> bool {
        matches!(
            self,
            Kind::Vee { .. } | Kind::Wedge { .. } | Kind::Cut { .. } | Kind::Ref { .. }
        )
    }
}

pub(crate) struct DNode {
    pub sig: Sig,
    pub kind: Kind,
    unfolded: OnceLock<Result<Deriv, DerivError>>,
}

/// A finite notation for an infinitary derivation. The signature is known at
/// construction; the last inference and its premises are computed on demand.
#[derive(Clone)]
pub struct Deriv(Arc<DNode>);

impl Deriv {
    pub(crate) fn make(sig: Sig, kind: Kind) -> Deriv {
        Deriv(Arc::new(DNode {
            sig,
            kind,
            unfolded: OnceLock::new(),
        }))
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn sig(&self) -> &Sig {
        &self.0.sig
    }

    pub fn seq(&self) -> &Sequent {
        &self.0.sig.seq
    }

    pub fn bound(&self) -> &OrdCode {
        &self.0.sig.bound
    }

    pub fn rank(&self) -> u32 {
        self.0.sig.rank
    }

    pub fn hull(&self) -> &Hull {
        &self.0.sig.hull
    }

    /// Name of the constructor at the root of the term.
    pub fn term_name(&self) -> &'static str {
        self.0.kind.name()
    }

    pub fn same_term(&self, other: &Deriv) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The same derivation written with an explicit inference at the root.
    /// Results are cached; unfolding is pure.
    pub fn unfold(&self) -> Result<Deriv, DerivError> {
        if self.0.kind.is_explicit() {
            return Ok(self.clone());
        }
        self.0.unfolded.get_or_init(|| self.compute_unfold()).clone()
    }

    fn compute_unfold(&self) -> Result<Deriv, DerivError> {
        let e = match &self.0.kind {
            Kind::Weak { inner } => super::transform::unfold_weak(self, inner),
            Kind::Strip { inner, c } => super::transform::unfold_strip(self, inner, c),
            Kind::Inv { inner, k, index } => super::transform::unfold_inv(self, inner, k, index),
            Kind::Red { c, left, right } => super::transform::unfold_red(self, c, left, right),
            Kind::Elim { inner } => super::transform::unfold_elim(self, inner),
            Kind::Taut { a } => super::embed::unfold_taut(self, a),
            Kind::Fund { a, schema } => super::embed::unfold_fund(self, a, schema),
            Kind::FundAt { b, schema } => super::embed::unfold_fund_at(self, b, schema),
            Kind::Truth { focus, pool } => super::embed::unfold_truth(self, focus, pool),
            Kind::Found { schema } => super::embed::unfold_found(self, schema),
            Kind::Refl { a, c, target } => super::embed::unfold_refl(self, a, c, target),
            Kind::Emb(data) => super::embed::unfold_emb(self, data),
            _ => unreachable!("explicit nodes unfold to themselves"),
        }?;
        debug_assert!(e.sig() == self.sig(), "unfolding changed the signature of {self:?}");
        Ok(e)
    }

    /// The last inference of the derivation.
    pub fn rule(&self) -> Result<RuleView, DerivError> {
        RuleView::of_explicit(&self.unfold()?)
    }

    // Explicit inferences. These record whatever they are given; whether the
    // data fits together is for the checker to decide.

    /// (⋁) on `main` with index `index`.
    pub fn vee(sig: Sig, main: Formula, index: Index, sub: Deriv) -> Deriv {
        Deriv::make(sig, Kind::Vee { main, index, sub })
    }

    /// (⋀) on `main` with premise `family(ι)` for each ι in J.
    pub fn wedge(
        sig: Sig,
        main: Formula,
        family: impl Fn(&Index) -> Result<Deriv, DerivError> + Send + Sync + 'static,
    ) -> Deriv {
        Deriv::make(
            sig,
            Kind::Wedge {
                main,
                family: Some(Arc::new(family)),
            },
        )
    }

    /// (⋀) with an empty index set, i.e. on a true Δ0 sentence.
    pub fn leaf(sig: Sig, main: Formula) -> Deriv {
        Deriv::make(sig, Kind::Wedge { main, family: None })
    }

    /// (cut) with left premise `Γ, ¬C` and right premise `C, Γ`.
    pub fn cut(sig: Sig, c: Formula, left: Deriv, right: Deriv) -> Deriv {
        Deriv::make(sig, Kind::Cut { c, left, right })
    }

    /// (Ref) on `A(c)` with right premise `¬target, Γ`.
    pub fn reflect(sig: Sig, a: Formula, c: Term, target: Formula, left: Deriv, right: Deriv) -> Deriv {
        Deriv::make(
            sig,
            Kind::Ref {
                a,
                c,
                target,
                left,
                right,
            },
        )
    }

    /// Weakening: `P' ⊢^{α'}_{m'} Γ, Δ` from `P ⊢^α_m Γ`.
    pub fn weaken(d: &Deriv, delta: &Sequent, bound: OrdCode, rank: u32, hull: Hull) -> Result<Deriv, DerivError> {
        Deriv::weaken_to(d, Sig::new(hull, bound, rank, d.seq().union(delta)))
    }

    /// Weakening to an explicitly given signature.
    pub fn weaken_to(d: &Deriv, sig: Sig) -> Result<Deriv, DerivError> {
        let have = d.sig();
        if *have == sig {
            return Ok(d.clone());
        }
        if !have.hull.is_subhull(&sig.hull) {
            return Err(DerivError::Construction(format!(
                "weakening: hull {} is not contained in {}",
                have.hull, sig.hull
            )));
        }
        if have.rank > sig.rank {
            return Err(DerivError::Construction(format!(
                "weakening: rank {} exceeds {}",
                have.rank, sig.rank
            )));
        }
        if have.bound > sig.bound {
            return Err(DerivError::Construction(format!(
                "weakening: bound {} exceeds {}",
                have.bound, sig.bound
            )));
        }
        if !have.seq.is_subset(&sig.seq) {
            return Err(DerivError::Construction(format!(
                "weakening: {} is not contained in {}",
                have.seq, sig.seq
            )));
        }
        sig.require_control("weakening")?;
        let inner = match &d.0.kind {
            Kind::Weak { inner } => inner.clone(),
            _ => d.clone(),
        };
        Ok(Deriv::make(sig, Kind::Weak { inner }))
    }

    /// Weakening that keeps the bound.
    pub(crate) fn fit(d: &Deriv, target: &Target) -> Result<Deriv, DerivError> {
        Deriv::weaken_to(
            d,
            Sig::new(target.hull.clone(), d.bound().clone(), target.rank, target.seq.clone()),
        )
    }
}

impl fmt::Debug for Deriv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{:?}]", self.term_name(), self.sig())
    }
}

/// Where a premise has to land: the parent's sequent plus the added formula,
/// the parent's rank and the parent's hull, extended by ι under (⋀).
#[derive(Clone, Debug)]
pub(crate) struct Target {
    pub seq: Sequent,
    pub rank: u32,
    pub hull: Hull,
    pub added: Formula,
}

impl Target {
    pub fn new(parent: &Sig, added: Formula, hull: Hull) -> Target {
        Target {
            seq: parent.seq.with(added.clone()),
            rank: parent.rank,
            hull,
            added,
        }
    }
}

/// Rebuilds the explicit inference `e` under the signature `sig`, sending
/// each premise `p` with index ι through `f(ι, target, p)`.
pub(crate) fn copy_rule(
    e: &Deriv,
    sig: Sig,
    f: impl Fn(&Index, &Target, &Deriv) -> Result<Deriv, DerivError> + Send + Sync + 'static,
) -> Result<Deriv, DerivError> {
    let plain = |added: Formula| Target::new(&sig, added, sig.hull.clone());
    Ok(match e.kind() {
        Kind::Vee { main, index, sub } => {
            let added =
                instance(main, index).ok_or_else(|| DerivError::Invalid(format!("{main} has no instance {index}")))?;
            let sub = f(index, &plain(added), sub)?;
            Deriv::vee(sig, main.clone(), index.clone(), sub)
        }
        Kind::Wedge { main, family: None } => Deriv::leaf(sig, main.clone()),
        Kind::Wedge {
            main,
            family: Some(family),
        } => {
            let family = family.clone();
            let parent = sig.clone();
            let m = main.clone();
            Deriv::wedge(sig, main.clone(), move |i| {
                let p = family(i)?;
                let added = instance(&m, i).ok_or_else(|| DerivError::Invalid(format!("{m} has no instance {i}")))?;
                let hull = premise_hull(RuleTag::Wedge, &parent.hull, i);
                f(i, &Target::new(&parent, added, hull), &p)
            })
        }
        Kind::Cut { c, left, right } => {
            let l = f(&Index::Branch(0), &plain(c.negate()), left)?;
            let r = f(&Index::Branch(1), &plain(c.clone()), right)?;
            Deriv::cut(sig, c.clone(), l, r)
        }
        Kind::Ref {
            a,
            c,
            target,
            left,
            right,
        } => {
            let l = f(&Index::Branch(0), &plain(a.clone()), left)?;
            let r = f(&Index::Branch(1), &plain(target.negate()), right)?;
            Deriv::reflect(sig, a.clone(), c.clone(), target.clone(), l, r)
        }
        _ => {
            return Err(DerivError::Invalid(format!("{e:?} is not an explicit inference")));
        }
    })
}

/// P(ι) for (⋀) premises, P otherwise.
pub(crate) fn premise_hull(tag: RuleTag, parent: &Hull, i: &Index) -> Hull {
    match (tag, i) {
        (RuleTag::Wedge, Index::Set(s)) => parent.extend(s),
        _ => parent.clone(),
    }
}

pub(crate) fn require_control(sig: &Sig, what: &str) -> Result<(), DerivError> {
    sig.require_control(what)
}

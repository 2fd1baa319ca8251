//! Derivations built directly: tautologies, foundation, the theory axioms and
//! the embedding of finitary proofs.

use std::sync::Arc;

use crate::finitary::{Axiom, NodeId, Proof, Rule};
use crate::ord::OrdCode;
use crate::syntax::{fresh_var, instance, structural_polarity, Formula, Index, Node, Polarity, Sequent, Term, Var};
use crate::universe::{eval_delta0, DeskSet, HfSet, Hull};

use super::deriv::{require_control, Deriv, EmbData, Item, Kind, Schema, Sig, Target};
use super::DerivError;

fn truth(c: &Formula) -> Result<bool, DerivError> {
    Ok(eval_delta0(c)?)
}

fn name(s: &DeskSet) -> Term {
    Term::Name(s.clone())
}

fn inst(f: &Formula, i: &Index) -> Result<Formula, DerivError> {
    instance(f, i).ok_or_else(|| DerivError::Invalid(format!("{f} has no instance {i}")))
}

fn set_index(i: &Index) -> Result<&DeskSet, DerivError> {
    i.set().ok_or_else(|| DerivError::Index(format!("{i} is not a set")))
}

/// `(m, ā) = Ω·m + 3·rank(a₁) # ⋯ # 3·rank(aₙ)`.
pub fn embedding_bound<'a>(m: u32, sets: impl IntoIterator<Item = &'a DeskSet>) -> OrdCode {
    let sum = sets
        .into_iter()
        .fold(OrdCode::zero(), |acc, a| acc.nat_sum(&a.rank().nat_mul(3)));
    OrdCode::omega_times(u64::from(m)).add(&sum)
}

impl Deriv {
    /// `P ⊢^{2d}_0 Γ, ¬A, A` with `d = dp(A)`.
    pub fn taut(a: &Formula, side: &Sequent, hull: &Hull) -> Result<Deriv, DerivError> {
        if !a.is_sentence() {
            return Err(DerivError::Construction(format!("tautology on open formula {a}")));
        }
        let a = match structural_polarity(a) {
            Some(Polarity::Conjunctive) => a.negate(),
            _ => a.clone(),
        };
        let seq = side.with(a.clone()).with(a.negate());
        let sig = Sig::new(hull.clone(), OrdCode::nat(2 * u64::from(a.depth())), 0, seq);
        require_control(&sig, "tautology")?;
        Ok(Deriv::make(sig, Kind::Taut { a }))
    }

    /// `P(a) ⊢^{2d # 3·rank(a)}_0 B, ∀x∈a A(x)` for the foundation schema on
    /// `phi(var)`, where B says there is an ∈-minimal counterexample.
    pub fn fund(a: &DeskSet, phi: &Formula, var: &Var, hull: &Hull) -> Result<Deriv, DerivError> {
        let mut avoid = phi.all_vars();
        avoid.insert(var.clone());
        let inner = fresh_var("y", &avoid);
        let f = Axiom::Foundation {
            phi: phi.clone(),
            var: var.clone(),
            inner,
        }
        .instance()
        .zero_as_name();
        if !f.is_sentence() {
            return Err(DerivError::Construction(format!(
                "{phi} has free variables besides {var}"
            )));
        }
        fund_node(a, &Arc::new(Schema::from_instance(&f)?), hull)
    }

    /// A cut-free derivation of the closed axiom instance.
    pub fn axiom(ax: &Axiom, hull: &Hull) -> Result<Deriv, DerivError> {
        axiom_as(ax, ax.instance().zero_as_name(), hull)
    }

    /// Embedding of a checked finitary proof under the assignment `ā`:
    /// `P(ā) ⊢^{(m,ā)}_m Γ(ā)`. Variables without a value and the constant 0
    /// are read as ∅.
    pub fn embed(proof: Arc<Proof>, assign: &[(Var, DeskSet)], hull: &Hull) -> Result<Deriv, DerivError> {
        let root = proof
            .root()
            .ok_or_else(|| DerivError::Construction("empty proof".into()))?;
        let mut list: Vec<(Var, DeskSet)> = Vec::new();
        for (v, s) in assign {
            list.retain(|(w, _)| w != v);
            list.push((v.clone(), s.clone()));
        }
        let params: Vec<DeskSet> = proof.params().params().cloned().map(DeskSet::Abstract).collect();
        let hull = hull.extend_all(list.iter().map(|(_, s)| s)).extend_all(&params);
        let data = EmbData {
            ranks: Arc::new(proof.embedding_ranks()),
            proof,
            node: root,
            assign: Arc::new(list),
        };
        emb_node(data, hull)
    }
}

/// The axiom derivation for `ax` ending in `f`, which is its closed instance
/// up to the names of bound variables.
fn axiom_as(ax: &Axiom, f: Formula, hull: &Hull) -> Result<Deriv, DerivError> {
    if !f.is_sentence() {
        return Err(DerivError::Construction(format!("axiom instance {f} is not closed")));
    }
    let seq = Sequent::singleton(f.clone());
    match ax {
        Axiom::Foundation { .. } => {
            let schema = Arc::new(Schema::from_instance(&f)?);
            let sig = Sig::new(hull.clone(), OrdCode::Omega.add(&OrdCode::nat(2)), 0, seq);
            require_control(&sig, "foundation axiom")?;
            Ok(Deriv::make(sig, Kind::Found { schema }))
        }
        Axiom::Reflection { term, .. } => {
            let c = term
                .denotation()
                .map(|s| name(&s))
                .ok_or_else(|| DerivError::Construction(format!("reflection term {term} is not closed")))?;
            let a = inst(&f, &Index::Branch(0))?.negate();
            let target = inst(&f, &Index::Branch(1))?;
            let h = u64::from(2 * a.depth()).max(2) + 1;
            let sig = Sig::new(hull.clone(), OrdCode::nat(h + 2), 0, seq);
            require_control(&sig, "reflection axiom")?;
            Ok(Deriv::make(sig, Kind::Refl { a, c, target }))
        }
        _ => {
            let pool = Arc::new(witness_pool(ax));
            Ok(truth_node(seq, vec![Item::F(f)], pool, hull.clone()))
        }
    }
}

// ---- tautologies ----

pub(crate) fn unfold_taut(this: &Deriv, a: &Formula) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    if a.is_delta0() {
        let main = if truth(a)? { a.clone() } else { a.negate() };
        return Ok(Deriv::leaf(sig, main));
    }
    let d = u64::from(a.depth());
    let a = a.clone();
    Ok(Deriv::wedge(sig.clone(), a.negate(), move |i| {
        let ai = inst(&a, i)?;
        let hull = match i {
            Index::Set(s) => sig.hull.extend(s),
            Index::Branch(_) => sig.hull.clone(),
        };
        let vseq = sig.seq.with(ai.negate());
        let t = Deriv::taut(&ai, &sig.seq, &hull)?;
        let sub = Deriv::weaken_to(&t, Sig::new(hull.clone(), OrdCode::nat(2 * d - 2), 0, vseq.with(ai)))?;
        Ok(Deriv::vee(
            Sig::new(hull, OrdCode::nat(2 * d - 1), 0, vseq),
            a.clone(),
            i.clone(),
            sub,
        ))
    }))
}

// ---- foundation ----

fn fund_node(a: &DeskSet, schema: &Arc<Schema>, hull: &Hull) -> Result<Deriv, DerivError> {
    let hull = hull.extend(a);
    let seq = Sequent::from_iter([schema.b.clone(), schema.hyp(a)]);
    let bound = OrdCode::nat(2 * u64::from(schema.d)).nat_sum(&a.rank().nat_mul(3));
    let sig = Sig::new(hull, bound, 0, seq);
    require_control(&sig, "foundation")?;
    Ok(Deriv::make(
        sig,
        Kind::Fund {
            a: a.clone(),
            schema: schema.clone(),
        },
    ))
}

fn fund_at_node(b: &DeskSet, schema: &Arc<Schema>, hull: &Hull) -> Result<Deriv, DerivError> {
    let hull = hull.extend(b);
    let seq = Sequent::from_iter([schema.b.clone(), schema.a(b)]);
    let bound = OrdCode::nat(2 * u64::from(schema.d))
        .nat_sum(&b.rank().nat_mul(3))
        .add(&OrdCode::nat(2));
    let sig = Sig::new(hull, bound, 0, seq);
    require_control(&sig, "foundation")?;
    Ok(Deriv::make(
        sig,
        Kind::FundAt {
            b: b.clone(),
            schema: schema.clone(),
        },
    ))
}

/// An ∈-minimal `c` among `candidates` with `A(c)` false, derived by (⋁) on B
/// from the true Δ0 sentence `∀y∈c A(y) ∧ ¬A(c)`.
fn counterexample(sig: Sig, schema: &Schema, candidates: impl IntoIterator<Item = HfSet>) -> Result<Deriv, DerivError> {
    let mut cs: Vec<HfSet> = candidates.into_iter().collect();
    cs.sort_by_key(|c| (c.rank(), c.clone()));
    for c in cs {
        let c = DeskSet::Concrete(c);
        if !truth(&schema.a(&c))? {
            let m = schema.m(&c);
            let leaf = Deriv::leaf(
                Sig::new(sig.hull.clone(), OrdCode::zero(), sig.rank, sig.seq.with(m.clone())),
                m,
            );
            return Ok(Deriv::vee(sig, schema.b.clone(), Index::Set(c), leaf));
        }
    }
    Err(DerivError::Invalid(
        "no counterexample to a false foundation hypothesis".into(),
    ))
}

fn concrete(s: &DeskSet) -> Result<&HfSet, DerivError> {
    s.as_concrete()
        .ok_or_else(|| DerivError::Open(format!("foundation below parameter {s}")))
}

pub(crate) fn unfold_fund(this: &Deriv, a: &DeskSet, schema: &Arc<Schema>) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let hyp = schema.hyp(a);
    if schema.d == 0 {
        if truth(&hyp)? {
            return Ok(Deriv::leaf(sig, hyp));
        }
        return counterexample(sig, schema, concrete(a)?.transitive_closure());
    }
    let schema = schema.clone();
    let parent = sig.clone();
    Ok(Deriv::wedge(sig, hyp, move |i| {
        let b = set_index(i)?;
        let at = fund_at_node(b, &schema, &parent.hull)?;
        Deriv::fit(&at, &Target::new(&parent, schema.a(b), parent.hull.extend(b)))
    }))
}

pub(crate) fn unfold_fund_at(this: &Deriv, b: &DeskSet, schema: &Arc<Schema>) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    if schema.d == 0 {
        if truth(&schema.a(b))? {
            return Ok(Deriv::leaf(sig, schema.a(b)));
        }
        let hb = concrete(b)?;
        let mut cands = hb.transitive_closure();
        cands.insert(hb.clone());
        return counterexample(sig, schema, cands);
    }
    let mb = schema.m(b);
    let below = sig.bound.clone();
    let two = OrdCode::nat(2 * u64::from(schema.d)).nat_sum(&b.rank().nat_mul(3));
    debug_assert_eq!(two.add(&OrdCode::nat(2)), below);
    let inner = Sig::new(sig.hull.clone(), two.succ(), 0, sig.seq.with(mb.clone()));
    let (schema2, b2, parent) = (schema.clone(), b.clone(), inner.clone());
    let wedge = Deriv::wedge(inner, mb.clone(), move |i| {
        let hull = parent.hull.clone();
        match i {
            Index::Branch(0) => {
                let f = fund_node(&b2, &schema2, &hull)?;
                Deriv::fit(&f, &Target::new(&parent, schema2.hyp(&b2), hull))
            }
            Index::Branch(1) => {
                let ab = schema2.a(&b2);
                let t = Deriv::taut(&ab, &Sequent::new(), &hull)?;
                Deriv::fit(&t, &Target::new(&parent, ab.negate(), hull))
            }
            _ => Err(DerivError::Index(i.to_string())),
        }
    });
    Ok(Deriv::vee(sig, schema.b.clone(), Index::Set(b.clone()), wedge))
}

pub(crate) fn unfold_found(this: &Deriv, schema: &Arc<Schema>) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let hull = sig.hull.clone();
    let s1 = Sig::new(hull.clone(), OrdCode::Omega.succ(), 0, sig.seq.with(schema.b.clone()));
    let s2 = Sig::new(hull, OrdCode::Omega, 0, s1.seq.with(schema.all.clone()));
    let (schema2, parent) = (schema.clone(), s2.clone());
    let wedge = Deriv::wedge(s2, schema.all.clone(), move |i| {
        let c = set_index(i)?;
        let at = fund_at_node(c, &schema2, &parent.hull)?;
        Deriv::fit(&at, &Target::new(&parent, schema2.a(c), parent.hull.extend(c)))
    });
    let f = schema.f.clone();
    let vee1 = Deriv::vee(s1, f.clone(), Index::Branch(1), wedge);
    Ok(Deriv::vee(sig, f, Index::Branch(0), vee1))
}

// ---- reflection ----

pub(crate) fn unfold_refl(this: &Deriv, a: &Formula, c: &Term, target: &Formula) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let f = sig.seq.iter().next().cloned().expect("reflection axiom sequent");
    let hull = sig.hull.clone();
    let h = sig.bound.as_sub().and_then(|b| b.as_nat()).expect("finite height") - 2;
    let s1 = Sig::new(hull.clone(), OrdCode::nat(h + 1), 0, sig.seq.with(a.negate()));
    let s2 = Sig::new(hull.clone(), OrdCode::nat(h), 0, s1.seq.with(target.clone()));
    let left = Deriv::fit(
        &Deriv::taut(a, &s2.seq, &hull)?,
        &Target::new(&s2, a.clone(), hull.clone()),
    )?;
    let right = Deriv::fit(
        &Deriv::taut(target, &s2.seq, &hull)?,
        &Target::new(&s2, target.negate(), hull.clone()),
    )?;
    let r = Deriv::reflect(s2, a.clone(), c.clone(), target.clone(), left, right);
    let vee1 = Deriv::vee(s1, f.clone(), Index::Branch(1), r);
    Ok(Deriv::vee(sig, f, Index::Branch(0), vee1))
}

// ---- truth-directed derivations of true axiom instances ----

/// Height of the truth-directed derivation of a true sentence.
fn height(f: &Formula) -> u64 {
    if f.is_delta0() {
        return 0;
    }
    match f.node() {
        Node::Or(a, b) => height(a) + height(b) + 2,
        Node::And(a, b) => height(a).max(height(b)) + 1,
        Node::BEx(_, _, a) | Node::BAll(_, _, a) | Node::Ex(_, a) | Node::All(_, a) => height(a) + 1,
        Node::Mem { .. } | Node::Ad { .. } => 0,
    }
}

fn item_height(item: &Item) -> u64 {
    match item {
        Item::F(f) => height(f),
        Item::OrSecond(f) => match f.node() {
            Node::Or(_, b) => height(b) + 1,
            _ => 0,
        },
    }
}

fn item_formula(item: &Item) -> Option<Formula> {
    match item {
        Item::F(f) => Some(f.clone()),
        Item::OrSecond(f) => instance(f, &Index::Branch(1)),
    }
}

fn truth_node(seq: Sequent, focus: Vec<Item>, pool: Arc<Vec<DeskSet>>, hull: Hull) -> Deriv {
    let bound = OrdCode::nat(focus.iter().map(item_height).sum());
    Deriv::make(Sig::new(hull, bound, 0, seq), Kind::Truth { focus, pool })
}

fn candidates(pool: &[DeskSet]) -> Vec<DeskSet> {
    let mut out = pool.to_vec();
    if !out.contains(&DeskSet::empty()) {
        out.push(DeskSet::empty());
    }
    out
}

/// Three-valued truth, using `pool` for witnesses of unbounded existentials.
fn sat(f: &Formula, pool: &[DeskSet]) -> Option<bool> {
    if f.is_delta0() {
        return eval_delta0(f).ok();
    }
    let over = |members: Vec<DeskSet>, exists: bool| -> Option<bool> {
        let mut unknown = false;
        for m in members {
            match sat(&instance(f, &Index::Set(m))?, pool) {
                Some(b) if b == exists => return Some(exists),
                Some(_) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(!exists)
        }
    };
    match f.node() {
        Node::Or(a, b) => match (sat(a, pool), sat(b, pool)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        Node::And(a, b) => match (sat(a, pool), sat(b, pool)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Node::BEx(_, s, _) | Node::BAll(_, s, _) => {
            let members = s
                .denotation()?
                .as_concrete()?
                .members()
                .cloned()
                .map(DeskSet::Concrete)
                .collect();
            over(members, matches!(f.node(), Node::BEx(..)))
        }
        Node::Ex(..) => match over(candidates(pool), true) {
            Some(true) => Some(true),
            _ => None,
        },
        _ => None,
    }
}

/// The first candidate whose instance is true, else the first undecided one.
fn witness(f: &Formula, cands: Vec<DeskSet>, pool: &[DeskSet]) -> Result<DeskSet, DerivError> {
    let mut undecided = None;
    for c in cands {
        match sat(&inst(f, &Index::Set(c.clone()))?, pool) {
            Some(true) => return Ok(c),
            None if undecided.is_none() => undecided = Some(c),
            _ => {}
        }
    }
    undecided.ok_or_else(|| DerivError::Open(format!("no witness for {f} among the candidates")))
}

pub(crate) fn unfold_truth(this: &Deriv, focus: &[Item], pool: &Arc<Vec<DeskSet>>) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let sats: Vec<Option<bool>> = focus
        .iter()
        .map(|it| item_formula(it).and_then(|f| sat(&f, pool)))
        .collect();
    let k = sats
        .iter()
        .position(|s| *s == Some(true))
        .or_else(|| sats.iter().position(Option::is_none))
        .unwrap_or(0);
    let replace = |with: Vec<Item>| {
        let mut out = focus.to_vec();
        out.splice(k..=k, with);
        out
    };
    let next = |added: &Formula, with: Vec<Item>, hull: Hull| {
        truth_node(sig.seq.with(added.clone()), replace(with), pool.clone(), hull)
    };
    match &focus[k] {
        Item::OrSecond(g) => {
            let b = inst(g, &Index::Branch(1))?;
            let sub = next(&b, vec![Item::F(b.clone())], sig.hull.clone());
            Ok(Deriv::vee(sig, g.clone(), Index::Branch(1), sub))
        }
        Item::F(g) if g.is_delta0() => {
            if truth(g)? {
                Ok(Deriv::leaf(sig, g.clone()))
            } else {
                Err(DerivError::Construction(format!("axiom instance part {g} is false")))
            }
        }
        Item::F(g) => match g.node() {
            Node::Or(a, _) => {
                let sub = next(a, vec![Item::F(a.clone()), Item::OrSecond(g.clone())], sig.hull.clone());
                Ok(Deriv::vee(sig, g.clone(), Index::Branch(0), sub))
            }
            Node::BEx(_, s, _) => {
                let members: Vec<DeskSet> = match s.denotation() {
                    Some(DeskSet::Concrete(a)) => a.members().cloned().map(DeskSet::Concrete).collect(),
                    _ => return Err(DerivError::Open(format!("witness for {g}"))),
                };
                let w = witness(g, members, pool)?;
                let gi = inst(g, &Index::Set(w.clone()))?;
                let sub = next(&gi, vec![Item::F(gi.clone())], sig.hull.clone());
                Ok(Deriv::vee(sig, g.clone(), Index::Set(w), sub))
            }
            Node::Ex(..) => {
                let w = witness(g, candidates(pool), pool)?;
                let gi = inst(g, &Index::Set(w.clone()))?;
                let sub = next(&gi, vec![Item::F(gi.clone())], sig.hull.clone());
                Ok(Deriv::vee(sig, g.clone(), Index::Set(w), sub))
            }
            _ => {
                let (g, focus, pool, parent) = (g.clone(), focus.to_vec(), pool.clone(), sig.clone());
                Ok(Deriv::wedge(sig, g.clone(), move |i| {
                    let gi = inst(&g, i)?;
                    let hull = match i {
                        Index::Set(s) => parent.hull.extend(s),
                        Index::Branch(_) => parent.hull.clone(),
                    };
                    let mut items = focus.clone();
                    items[k] = Item::F(gi.clone());
                    Ok(truth_node(parent.seq.with(gi), items, pool.clone(), hull))
                }))
            }
        },
    }
}

/// Witnesses for the unbounded existentials of a closed axiom instance.
fn witness_pool(ax: &Axiom) -> Vec<DeskSet> {
    let set = |t: &Term| t.denotation().and_then(|s| s.as_concrete().cloned());
    let holds = |phi: &Formula| eval_delta0(phi).unwrap_or(false);
    let out: Option<HfSet> = match ax {
        Axiom::Pair { a, b } => set(a).zip(set(b)).map(|(a, b)| a.pair(&b)),
        Axiom::Union { a } => set(a).map(|a| a.union()),
        Axiom::Separation { phi, var, set: s } => set(s).map(|a| {
            HfSet::from_members(
                a.members()
                    .filter(|m| holds(&phi.subst(var, &Term::name((*m).clone()))))
                    .cloned(),
            )
        }),
        Axiom::Collection { phi, x, y, set: s } => set(s).map(|a| {
            let small = HfSet::all_below_rank(4);
            HfSet::from_members(a.members().filter_map(|m| {
                let at = phi.subst(x, &Term::name(m.clone()));
                small
                    .iter()
                    .find(|c| holds(&at.subst(y, &Term::name((*c).clone()))))
                    .cloned()
            }))
        }),
        Axiom::Ext { .. } | Axiom::Infinity | Axiom::Foundation { .. } | Axiom::Reflection { .. } => None,
    };
    out.map(DeskSet::Concrete).into_iter().collect()
}

// ---- embedding ----

fn value(assign: &[(Var, DeskSet)], v: &Var) -> DeskSet {
    assign
        .iter()
        .find(|(w, _)| w == v)
        .map(|(_, s)| s.clone())
        .unwrap_or_else(DeskSet::empty)
}

fn close_term(assign: &[(Var, DeskSet)], t: &Term) -> Term {
    match t {
        Term::Var(v) => name(&value(assign, v)),
        Term::Zero => name(&DeskSet::empty()),
        Term::Name(_) => t.clone(),
    }
}

fn close_formula(assign: &[(Var, DeskSet)], f: &Formula, keep: &[&Var]) -> Formula {
    let pairs: Vec<(Var, Term)> = f
        .free_vars()
        .into_iter()
        .filter(|v| !keep.contains(&v))
        .map(|v| {
            let t = name(&value(assign, &v));
            (v, t)
        })
        .collect();
    f.subst_all(&pairs).zero_as_name()
}

fn close_seq(assign: &[(Var, DeskSet)], s: &Sequent) -> Sequent {
    s.map(|f| close_formula(assign, f, &[]))
}

fn with_value(assign: &[(Var, DeskSet)], v: &Var, s: &DeskSet) -> Arc<Vec<(Var, DeskSet)>> {
    let mut out: Vec<(Var, DeskSet)> = assign.iter().filter(|(w, _)| w != v).cloned().collect();
    out.push((v.clone(), s.clone()));
    Arc::new(out)
}

fn emb_node(data: EmbData, hull: Hull) -> Result<Deriv, DerivError> {
    let node = data.proof.node(data.node);
    let m = data.ranks[data.node];
    let seq = close_seq(&data.assign, &node.conclusion);
    let bound = embedding_bound(m, data.assign.iter().map(|(_, s)| s));
    let sig = Sig::new(hull, bound, m, seq);
    require_control(&sig, "embedding")?;
    Ok(Deriv::make(sig, Kind::Emb(data)))
}

fn emb_at(data: &EmbData, node: NodeId, assign: Arc<Vec<(Var, DeskSet)>>, hull: Hull) -> Result<Deriv, DerivError> {
    emb_node(
        EmbData {
            node,
            assign,
            ..data.clone()
        },
        hull,
    )
}

/// The Δ0 case of a rule: a true main formula is derived outright; if it is
/// false, so are the formulas the chosen premise adds, and they are removed.
fn delta0_rule(
    sig: Sig,
    main: &Formula,
    premise: impl FnOnce() -> Result<(Deriv, Vec<Formula>), DerivError>,
) -> Result<Deriv, DerivError> {
    if truth(main)? {
        return Ok(Deriv::leaf(sig, main.clone()));
    }
    let (mut d, strip) = premise()?;
    for c in &strip {
        d = Deriv::strip(&d, c)?;
    }
    Deriv::weaken_to(&d, sig)?.unfold()
}

pub(crate) fn unfold_emb(this: &Deriv, data: &EmbData) -> Result<Deriv, DerivError> {
    let sig = this.sig().clone();
    let hull = sig.hull.clone();
    let node = data.proof.node(data.node);
    let assign = data.assign.clone();
    let close = |f: &Formula| close_formula(&assign, f, &[]);
    let sub = |i: usize| emb_at(data, node.premises[i], assign.clone(), hull.clone());
    let shape = |main: &Formula| DerivError::Invalid(format!("rule {} on {main}", node.rule.name()));
    match &node.rule {
        Rule::Log { formula } => {
            let a = close(formula);
            let side = sig.seq.without(&a).without(&a.negate());
            Deriv::weaken_to(&Deriv::taut(&a, &side, &hull)?, sig)?.unfold()
        }
        Rule::Axiom(ax) => {
            let closed = ax.map_witnesses(&|t| close_term(&assign, t), &|f, keep| close_formula(&assign, f, keep));
            let f = close(&ax.instance());
            Deriv::weaken_to(&axiom_as(&closed, f, &hull)?, sig)?.unfold()
        }
        Rule::Cut { formula } => {
            let c = close(formula);
            let left = Deriv::fit(&sub(0)?, &Target::new(&sig, c.negate(), hull.clone()))?;
            let right = Deriv::fit(&sub(1)?, &Target::new(&sig, c.clone(), hull.clone()))?;
            Ok(Deriv::cut(sig, c, left, right))
        }
        Rule::Or { main } => {
            let mc = close(main);
            let Node::Or(a0, a1) = mc.node() else {
                return Err(shape(&mc));
            };
            if mc.is_delta0() {
                return delta0_rule(sig, &mc, || Ok((sub(0)?, vec![a0.clone(), a1.clone()])));
            }
            let p = sub(0)?;
            let inner = Sig::new(hull.clone(), p.bound().succ(), sig.rank, sig.seq.with(a0.clone()));
            let p = Deriv::fit(&p, &Target::new(&inner, a1.clone(), hull.clone()))?;
            let inner = Deriv::vee(inner, mc.clone(), Index::Branch(1), p);
            Ok(Deriv::vee(sig, mc, Index::Branch(0), inner))
        }
        Rule::And { main } => {
            let mc = close(main);
            let Node::And(a0, a1) = mc.node() else {
                return Err(shape(&mc));
            };
            if mc.is_delta0() {
                return delta0_rule(sig, &mc, || {
                    let i = if truth(a0)? { 1 } else { 0 };
                    Ok((sub(i)?, vec![if i == 0 { a0.clone() } else { a1.clone() }]))
                });
            }
            let (data, parent, mc2) = (data.clone(), sig.clone(), mc.clone());
            Ok(Deriv::wedge(sig, mc, move |i| {
                let b = match i {
                    Index::Branch(b) if *b < 2 => usize::from(*b),
                    _ => return Err(DerivError::Index(i.to_string())),
                };
                let p = emb_at(
                    &data,
                    data.proof.node(data.node).premises[b],
                    data.assign.clone(),
                    parent.hull.clone(),
                )?;
                Deriv::fit(&p, &Target::new(&parent, inst(&mc2, i)?, parent.hull.clone()))
            }))
        }
        Rule::BEx { main, term } => {
            let mc = close(main);
            let Node::BEx(_, s, _) = mc.node() else {
                return Err(shape(&mc));
            };
            let t = close_term(&assign, term);
            let at = Index::Set(t.denotation().expect("closed term"));
            let mem = Formula::mem(t, s.clone());
            let body = inst(&mc, &at)?;
            if mc.is_delta0() {
                return delta0_rule(sig, &mc, || {
                    if truth(&mem)? {
                        Ok((sub(1)?, vec![body]))
                    } else {
                        Ok((sub(0)?, vec![mem]))
                    }
                });
            }
            if !truth(&mem)? {
                return Deriv::weaken_to(&Deriv::strip(&sub(0)?, &mem)?, sig)?.unfold();
            }
            let p = Deriv::fit(&sub(1)?, &Target::new(&sig, body, hull.clone()))?;
            Ok(Deriv::vee(sig, mc, at, p))
        }
        Rule::BAll { main, eigen } => {
            let mc = close(main);
            let Node::BAll(_, s, _) = mc.node() else {
                return Err(shape(&mc));
            };
            let s = s.clone();
            let at = |i: &DeskSet, hull: Hull| {
                let p = emb_at(data, node.premises[0], with_value(&assign, eigen, i), hull)?;
                Deriv::strip(&p, &Formula::not_mem(name(i), s.clone()))
            };
            if mc.is_delta0() {
                return delta0_rule(sig, &mc, || {
                    let members: Vec<DeskSet> = match s.denotation() {
                        Some(DeskSet::Concrete(a)) => a.members().cloned().map(DeskSet::Concrete).collect(),
                        _ => Vec::new(),
                    };
                    for i in members {
                        let body = inst(&mc, &Index::Set(i.clone()))?;
                        if !truth(&body)? {
                            return Ok((at(&i, hull.clone())?, vec![body]));
                        }
                    }
                    Err(DerivError::Invalid(format!("{mc} is false without a false instance")))
                });
            }
            let (data, parent, mc2, eigen) = (data.clone(), sig.clone(), mc.clone(), eigen.clone());
            Ok(Deriv::wedge(sig, mc, move |i| {
                let c = set_index(i)?;
                let hull = parent.hull.extend(c);
                let node = data.proof.node(data.node);
                let p = emb_at(
                    &data,
                    node.premises[0],
                    with_value(&data.assign, &eigen, c),
                    hull.clone(),
                )?;
                let p = Deriv::strip(&p, &Formula::not_mem(name(c), s.clone()))?;
                Deriv::fit(&p, &Target::new(&parent, inst(&mc2, i)?, hull))
            }))
        }
        Rule::Ex { main, term } => {
            let mc = close(main);
            let t = close_term(&assign, term);
            let at = Index::Set(t.denotation().expect("closed term"));
            let p = Deriv::fit(&sub(0)?, &Target::new(&sig, inst(&mc, &at)?, hull.clone()))?;
            Ok(Deriv::vee(sig, mc, at, p))
        }
        Rule::All { main, eigen } => {
            let mc = close(main);
            let (data, parent, mc2, eigen) = (data.clone(), sig.clone(), mc.clone(), eigen.clone());
            Ok(Deriv::wedge(sig, mc, move |i| {
                let c = set_index(i)?;
                let hull = parent.hull.extend(c);
                let node = data.proof.node(data.node);
                let p = emb_at(
                    &data,
                    node.premises[0],
                    with_value(&data.assign, &eigen, c),
                    hull.clone(),
                )?;
                Deriv::fit(&p, &Target::new(&parent, inst(&mc2, i)?, hull))
            }))
        }
    }
}

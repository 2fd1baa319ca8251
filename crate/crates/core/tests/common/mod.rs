#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use prooflab::finitary::{check_proof, parse_script, Proof};
use prooflab::infinitary::Deriv;
use prooflab::syntax::Var;
use prooflab::universe::{DeskSet, HfSet, Hull};

pub const N: u32 = 2;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../proofs")
}

fn load_dir(dir: PathBuf) -> Vec<(String, Arc<Proof>)> {
    let mut out: Vec<(String, Arc<Proof>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "proof"))
        .map(|p| {
            let src = std::fs::read_to_string(&p).unwrap();
            let proof = parse_script(&src).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_stem().unwrap().to_string_lossy().into_owned(), Arc::new(proof))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The checked corpus proofs, by file name.
pub fn corpus() -> Vec<(String, Arc<Proof>)> {
    let out = load_dir(corpus_dir());
    for (name, p) in &out {
        check_proof(p, N).unwrap_or_else(|d| panic!("{name}: {d}"));
    }
    out
}

pub fn invalid_corpus() -> Vec<(String, Arc<Proof>)> {
    load_dir(corpus_dir().join("invalid"))
}

pub fn proof(name: &str) -> Arc<Proof> {
    corpus()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no proof {name}"))
        .1
}

pub fn hf(s: &str) -> DeskSet {
    DeskSet::Concrete(HfSet::parse(s).unwrap())
}

/// Concrete values of rank at most 3 for the free variables of `proof`.
pub fn assignment(proof: &Proof, pick: usize) -> Vec<(Var, DeskSet)> {
    let sets = HfSet::all_below_rank(4);
    let vars = proof.end_sequent().map(|s| s.free_vars()).unwrap_or_default();
    vars.into_iter()
        .enumerate()
        .map(|(i, v)| (v, DeskSet::Concrete(sets[(pick * 7 + i * 5 + 3) % sets.len()].clone())))
        .collect()
}

pub fn embed(proof: &Arc<Proof>, pick: usize) -> Deriv {
    Deriv::embed(proof.clone(), &assignment(proof, pick), &Hull::new()).unwrap()
}

/// Brute-force truth in the hereditarily finite sets, on Ackermann codes:
/// `x ∈ y` iff bit `x` of `y` is set. Unbounded ∃ ranges over V_5 (codes
/// below 2^16), unbounded ∀ over V_4 (codes below 16). ad is false.
pub mod oracle {
    use prooflab::syntax::{Formula, Node, Sequent, Term, Var};
    use prooflab::universe::DeskSet;

    const EXISTS_BOUND: u64 = 1 << 16;
    const FORALL_BOUND: u64 = 16;

    fn value(t: &Term, env: &[(Var, u64)]) -> u64 {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, x)| *x)
                .expect("bound variable"),
            Term::Zero => 0,
            Term::Name(DeskSet::Concrete(s)) => s.ackermann().expect("small set"),
            Term::Name(DeskSet::Abstract(p)) => panic!("oracle cannot evaluate parameter {p}"),
        }
    }

    fn mem(x: u64, y: u64) -> bool {
        x < 64 && (y >> x) & 1 == 1
    }

    fn members(y: u64) -> impl Iterator<Item = u64> {
        (0..64).filter(move |&x| mem(x, y))
    }

    fn holds(f: &Formula, env: &mut Vec<(Var, u64)>) -> bool {
        let with = |v: &Var, x: u64, body: &Formula, env: &mut Vec<(Var, u64)>| {
            env.push((v.clone(), x));
            let r = holds(body, env);
            env.pop();
            r
        };
        match f.node() {
            Node::Mem { pos, elem, set } => mem(value(elem, env), value(set, env)) == *pos,
            Node::Ad { pos, .. } => !*pos,
            Node::Or(a, b) => holds(a, env) || holds(b, env),
            Node::And(a, b) => holds(a, env) && holds(b, env),
            Node::BEx(v, t, body) => members(value(t, env)).any(|x| with(v, x, body, env)),
            Node::BAll(v, t, body) => members(value(t, env)).all(|x| with(v, x, body, env)),
            Node::Ex(v, body) => {
                // ∃v (A ∧ B) with v not free in B is B ∧ ∃v A.
                if let Node::And(a, b) = body.node() {
                    for (inner, outer) in [(a, b), (b, a)] {
                        if !outer.free_vars().contains(v) {
                            return holds(outer, env) && (0..EXISTS_BOUND).any(|x| with(v, x, inner, env));
                        }
                    }
                }
                (0..EXISTS_BOUND).any(|x| with(v, x, body, env))
            }
            Node::All(v, body) => {
                if let Node::Or(a, b) = body.node() {
                    for (inner, outer) in [(a, b), (b, a)] {
                        if !outer.free_vars().contains(v) {
                            return holds(outer, env) || (0..FORALL_BOUND).all(|x| with(v, x, inner, env));
                        }
                    }
                }
                (0..FORALL_BOUND).all(|x| with(v, x, body, env))
            }
        }
    }

    pub fn true_formula(f: &Formula) -> bool {
        holds(f, &mut Vec::new())
    }

    pub fn true_sequent(s: &Sequent) -> bool {
        s.iter().any(true_formula)
    }
}

pub mod mutants {
    use prooflab::infinitary::{Deriv, Sig};
    use prooflab::ord::{Cnf, OrdCode};
    use prooflab::syntax::{parse_formula, Formula, Index, Sequent, Term};
    use prooflab::universe::{DeskSet, Hull, Param};

    use super::hf;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(fs: &[&Formula]) -> Sequent {
        fs.iter().map(|a| (*a).clone()).collect()
    }

    fn sig(bound: u64, rank: u32, s: Sequent) -> Sig {
        Sig::new(Hull::new(), OrdCode::nat(bound), rank, s)
    }

    fn param() -> DeskSet {
        DeskSet::Abstract(Param::new("p", Cnf::omega()))
    }

    /// `∃z (∅ ∈ z)` by (⋁) at {∅} over a true leaf. `tweak` edits the
    /// parent signature, main formula, index and premise signature.
    fn vee(tweak: impl FnOnce(&mut Sig, &mut Formula, &mut Index, &mut Sig)) -> Deriv {
        let a = f("(ex z (in {} z))");
        let leaf_main = f("(in {} {{}})");
        let mut parent = sig(1, 0, seq(&[&a]));
        let mut main = a.clone();
        let mut index = Index::Set(hf("{{}}"));
        let mut psig = sig(0, 0, seq(&[&a, &leaf_main]));
        tweak(&mut parent, &mut main, &mut index, &mut psig);
        Deriv::vee(parent, main, index, Deriv::leaf(psig, leaf_main))
    }

    /// A cut on `∃z (∅ ∈ z)` with `Γ = {∃z (∅ ∈ z)}` at rank `m`.
    fn cut(m: u32) -> Deriv {
        let c = f("(ex z (in {} z))");
        let left = Deriv::taut(&c, &Sequent::new(), &Hull::new()).unwrap();
        let left = Deriv::weaken_to(&left, sig(2, m, left.seq().clone())).unwrap();
        let right = vee(|_, _, _, _| {});
        let right = Deriv::weaken_to(&right, sig(1, m, right.seq().clone())).unwrap();
        Deriv::cut(sig(3, m, seq(&[&c])), c, left, right)
    }

    /// (Ref) on `a` at `{∅}` with `Γ = {a, ¬a, target, ¬target}`.
    fn reflect(a: &str, target: Option<Formula>) -> Deriv {
        let a = f(a);
        let c = Term::hf("{{}}");
        let target = target.unwrap_or_else(|| a.reflection_target(&c));
        let gamma = seq(&[&a, &a.negate(), &target, &target.negate()]);
        let bound = 2 * u64::from(a.depth().max(target.depth())) + 1;
        let t = |x: &Formula| {
            let d = Deriv::taut(x, &Sequent::new(), &Hull::new()).unwrap();
            Deriv::weaken_to(&d, sig(bound - 1, 0, gamma.clone())).unwrap()
        };
        Deriv::reflect(
            sig(bound, 0, gamma.clone()),
            a.clone(),
            c,
            target.clone(),
            t(&a),
            t(&target),
        )
    }

    /// `(side condition, a term satisfying it, the same term violating it)`.
    pub fn mutants() -> Vec<(&'static str, Deriv, Deriv)> {
        let ok = || vee(|_, _, _, _| {});
        let p = param();
        let pmem = Formula::not_mem(Term::name(p.clone()), Term::hf("{}"));
        vec![
            (
                "control",
                Deriv::leaf(
                    Sig::new(Hull::generated_by([&p]), OrdCode::zero(), 0, seq(&[&pmem])),
                    pmem.clone(),
                ),
                Deriv::leaf(sig(0, 0, seq(&[&pmem])), pmem.clone()),
            ),
            (
                "main-formula",
                ok(),
                vee(|s, _, _, ps| {
                    let other = f("(in {{}} {{{}}})");
                    s.seq = seq(&[&other]);
                    ps.seq = seq(&[&other, &f("(in {} {{}})")]);
                }),
            ),
            (
                "polarity",
                Deriv::leaf(sig(0, 0, seq(&[&f("(in {} {{}})")])), f("(in {} {{}})")),
                Deriv::leaf(sig(0, 0, seq(&[&f("(in {{}} {})")])), f("(in {{}} {})")),
            ),
            (
                "index",
                ok(),
                vee(|s, main, _, ps| {
                    let or = f("(or (ex z (in {} z)) (in {} {}))");
                    s.seq = seq(&[&or]);
                    ps.seq = seq(&[&or, &f("(in {} {{}})")]);
                    *main = or;
                }),
            ),
            ("cut-rank", cut(2), cut(1)),
            (
                "reflection-class",
                reflect("(all u (ex v (in u v)))", None),
                reflect("(all a (ex b (all c (ex d (in a d)))))", None),
            ),
            (
                "reflection-shape",
                reflect("(all u (ex v (in u v)))", None),
                reflect("(all u (ex v (in u v)))", Some(f("(ex z (and (ad z) (in {} z)))"))),
            ),
            ("premise-sequent", ok(), vee(|_, _, i, _| *i = Index::Set(hf("{{{}}}")))),
            (
                "premise-hull",
                ok(),
                vee(|_, _, _, ps| ps.hull = Hull::generated_by([&p])),
            ),
            ("premise-rank", ok(), vee(|_, _, _, ps| ps.rank = 1)),
            ("descent", ok(), vee(|_, _, _, ps| ps.bound = OrdCode::nat(1))),
        ]
    }
}

/// Ordinal codes for the law and well-foundedness suites, and an evaluator
/// that compares them without going through the library's comparison.
pub mod codes {
    use std::cmp::Ordering;

    use prooflab::ord::{Cnf, OrdCode};
    use rand::Rng;

    /// A principal part: Ω itself or ω^s.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub enum Part {
        Big,
        Pow(Vec<Part>),
    }

    fn cmp_part(a: &Part, b: &Part) -> Ordering {
        match (a, b) {
            (Part::Big, Part::Big) => Ordering::Equal,
            (Part::Pow(s), Part::Big) => cmp_sum(s, &[Part::Big]),
            (Part::Big, Part::Pow(t)) => cmp_sum(&[Part::Big], t),
            (Part::Pow(s), Part::Pow(t)) => cmp_sum(s, t),
        }
    }

    /// Lexicographic order on normalized sums.
    pub fn cmp_sum(a: &[Part], b: &[Part]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match cmp_part(x, y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }

    fn pow(s: Vec<Part>) -> Part {
        if s == [Part::Big] {
            Part::Big
        } else {
            Part::Pow(s)
        }
    }

    /// Drops every part absorbed by a larger part to its right.
    pub fn absorb(parts: Vec<Part>) -> Vec<Part> {
        let mut out: Vec<Part> = Vec::new();
        for p in parts {
            while out.last().is_some_and(|q| cmp_part(q, &p) == Ordering::Less) {
                out.pop();
            }
            out.push(p);
        }
        out
    }

    fn of_cnf(c: &Cnf) -> Vec<Part> {
        let parts = c
            .terms()
            .iter()
            .flat_map(|(e, k)| std::iter::repeat_n(pow(of_cnf(e)), *k as usize))
            .collect();
        absorb(parts)
    }

    /// The value of a code as a normalized sum of principal parts.
    pub fn value(a: &OrdCode) -> Vec<Part> {
        let parts = match a {
            OrdCode::Sub(c) => of_cnf(c),
            OrdCode::Omega => vec![Part::Big],
            OrdCode::WPow(e) => vec![pow(value(e))],
            OrdCode::Sum(ps) => ps.iter().flat_map(value).collect(),
        };
        absorb(parts)
    }

    pub fn cmp(a: &OrdCode, b: &OrdCode) -> Ordering {
        cmp_sum(&value(a), &value(b))
    }

    pub fn add(a: &OrdCode, b: &OrdCode) -> Vec<Part> {
        absorb(value(a).into_iter().chain(value(b)).collect())
    }

    pub fn nat_sum(a: &OrdCode, b: &OrdCode) -> Vec<Part> {
        let mut parts: Vec<Part> = value(a).into_iter().chain(value(b)).collect();
        parts.sort_by(|x, y| cmp_part(y, x));
        parts
    }

    pub fn omega_exp(a: &OrdCode) -> Vec<Part> {
        vec![pow(value(a))]
    }

    fn principal_leaves() -> Vec<OrdCode> {
        vec![OrdCode::nat(1), OrdCode::omega_small(), OrdCode::Omega]
    }

    /// Every normal code of tree size at most `max` whose sub-Ω leaves are
    /// 0, 1 or ω.
    pub fn enumerate(max: usize) -> Vec<OrdCode> {
        // principal[s]: principal codes of size exactly s.
        let mut principal: Vec<Vec<OrdCode>> = vec![Vec::new(); max + 1];
        let mut all: Vec<Vec<OrdCode>> = vec![Vec::new(); max + 1];
        if max >= 1 {
            principal[1] = principal_leaves();
            all[1] = [OrdCode::zero()].into_iter().chain(principal_leaves()).collect();
        }
        for s in 2..=max {
            let mut ps = Vec::new();
            for a in &all[s - 1] {
                if *a > OrdCode::Omega {
                    ps.push(OrdCode::WPow(Box::new(a.clone())));
                }
            }
            let mut sums = Vec::new();
            sum_parts(&principal, s - 1, None, &mut Vec::new(), &mut sums);
            principal[s] = ps.clone();
            all[s] = ps.into_iter().chain(sums).collect();
        }
        all.into_iter().flatten().collect()
    }

    /// Non-increasing sequences of principal parts with total size `left`,
    /// at least two long and starting at or above Ω.
    fn sum_parts(
        principal: &[Vec<OrdCode>],
        left: usize,
        cap: Option<&OrdCode>,
        acc: &mut Vec<OrdCode>,
        out: &mut Vec<OrdCode>,
    ) {
        if left == 0 {
            if acc.len() >= 2 {
                out.push(OrdCode::Sum(acc.clone()));
            }
            return;
        }
        for s in 1..=left {
            for p in &principal[s] {
                if cap.is_some_and(|c| p > c) || (acc.is_empty() && *p < OrdCode::Omega) {
                    continue;
                }
                acc.push(p.clone());
                sum_parts(principal, left - s, Some(p), acc, out);
                acc.pop();
            }
        }
    }

    fn small_cnf(rng: &mut impl Rng) -> Cnf {
        let k = rng.random_range(0..4);
        let mut terms: Vec<(Cnf, u64)> = Vec::new();
        let mut top = rng.random_range(0..4u64);
        for _ in 0..k {
            terms.push((Cnf::nat(top), rng.random_range(1..4)));
            if top == 0 {
                break;
            }
            top = rng.random_range(0..top);
        }
        Cnf::from_terms(terms)
    }

    fn random_principal(rng: &mut impl Rng, budget: usize) -> OrdCode {
        match rng.random_range(0..3) {
            0 if budget >= 3 => {
                let e = random_code(rng, budget - 1);
                if e > OrdCode::Omega {
                    OrdCode::WPow(Box::new(e))
                } else {
                    OrdCode::Omega
                }
            }
            1 => OrdCode::Omega,
            _ => OrdCode::Sub(Cnf::omega_pow(Cnf::nat(rng.random_range(0..3)))),
        }
    }

    /// A random normal code of tree size at most `max` (at least 4).
    pub fn random_code(rng: &mut impl Rng, max: usize) -> OrdCode {
        match rng.random_range(0..4) {
            0 | 1 if max >= 4 => {
                let mut parts = vec![OrdCode::Omega];
                let mut used = 2;
                while used < max && rng.random_bool(0.7) {
                    let p = random_principal(rng, (max - used).min(4));
                    if used + p.size() > max {
                        break;
                    }
                    used += p.size();
                    parts.push(p);
                }
                parts.sort_by(|a, b| b.cmp(a));
                match parts.len() {
                    1 => parts.pop().unwrap(),
                    _ => OrdCode::Sum(parts),
                }
            }
            2 => random_principal(rng, max),
            _ => OrdCode::Sub(small_cnf(rng)),
        }
    }
}

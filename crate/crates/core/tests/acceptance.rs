//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use common::codes::{self, random_code, Part};
use common::mutants::mutants;
use common::oracle::true_sequent;
use common::*;
use prooflab::finitary::{Axiom, Proof, Rule};
use prooflab::infinitary::{check_local, eval_cutfree, Deriv, RuleTag, Sampler, Sig};
use prooflab::ord::OrdCode;
use prooflab::syntax::{parse_formula, Formula, Index, Sequent, Term, Var};
use prooflab::universe::{DeskSet, HfSet, Hull};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit and body of one criterion.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1. Ordinal laws over random codes.

fn ordinal_laws() -> Outcome {
    const DRAWS: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut power_pairs = 0;
    for n in 0..DRAWS {
        let (a, b, c) = (
            random_code(&mut rng, 10),
            random_code(&mut rng, 10),
            random_code(&mut rng, 10),
        );
        for x in [&a, &b, &c] {
            ensure(x.is_normal() && x.size() <= 10, || format!("draw {n}: bad code {x:?}"))?;
        }
        let ctx = || format!("draw {n}: a = {a}, b = {b}, c = {c}");
        let truths = [a < b, a == b, a > b].iter().filter(|&&t| t).count();
        ensure(truths == 1, || format!("trichotomy fails, {}", ctx()))?;
        ensure(a.cmp(&b) == codes::cmp(&a, &b), || {
            format!("order disagrees with evaluation, {}", ctx())
        })?;
        let mut sorted = [&a, &b, &c];
        sorted.sort_by(|x, y| codes::cmp(x, y));
        ensure(
            sorted[0] <= sorted[1] && sorted[1] <= sorted[2] && sorted[0] <= sorted[2],
            || format!("transitivity fails, {}", ctx()),
        )?;
        ensure(codes::value(&a.add(&b)) == codes::add(&a, &b), || {
            format!("add value, {}", ctx())
        })?;
        ensure(a.add(&b).add(&c) == a.add(&b.add(&c)), || {
            format!("add associativity, {}", ctx())
        })?;
        ensure(b >= c || a.add(&b) < a.add(&c), || {
            format!("add right monotonicity, {}", ctx())
        })?;
        ensure(codes::value(&a.nat_sum(&b)) == codes::nat_sum(&a, &b), || {
            format!("nat_sum value, {}", ctx())
        })?;
        ensure(a.nat_sum(&b) == b.nat_sum(&a), || {
            format!("nat_sum commutativity, {}", ctx())
        })?;
        ensure(a.nat_sum(&b).nat_sum(&c) == a.nat_sum(&b.nat_sum(&c)), || {
            format!("nat_sum associativity, {}", ctx())
        })?;
        ensure(b >= c || a.nat_sum(&b) < a.nat_sum(&c), || {
            format!("nat_sum monotonicity, {}", ctx())
        })?;
        ensure(a.add(&b) <= a.nat_sum(&b), || format!("add above nat_sum, {}", ctx()))?;
        let (lo, hi) = if a < b { (&a, &b) } else { (&b, &a) };
        if lo < hi {
            power_pairs += 1;
            let w = lo.omega_exp();
            ensure(w.add(&w) <= hi.omega_exp(), || {
                format!("doubled power inequality, {}", ctx())
            })?;
            let doubled = codes::absorb(vec![Part::Pow(codes::value(lo)); 2]);
            ensure(
                codes::cmp_sum(&doubled, &codes::omega_exp(hi)) != Ordering::Greater,
                || format!("doubled power inequality (evaluated), {}", ctx()),
            )?;
        }
    }
    Ok(format!(
        "{DRAWS} triples, {power_pairs} strict pairs for the power inequality"
    ))
}

// 2. Exhaustive well-foundedness on small codes.

fn well_foundedness() -> Outcome {
    let all = codes::enumerate(8);
    for a in &all {
        ensure(a.is_normal(), || format!("enumerated code {a:?} is not normal"))?;
    }
    let values: Vec<Vec<Part>> = all.iter().map(codes::value).collect();
    for i in 0..all.len() {
        for j in 0..all.len() {
            let lib = all[i].cmp(&all[j]);
            ensure(lib == codes::cmp_sum(&values[i], &values[j]), || {
                format!("{} vs {}: order disagrees with evaluation", all[i], all[j])
            })?;
            ensure(lib == all[j].cmp(&all[i]).reverse(), || {
                format!("{} vs {}: not antisymmetric", all[i], all[j])
            })?;
            ensure((lib == Ordering::Equal) == (i == j), || {
                format!("{} and {} compare equal", all[i], all[j])
            })?;
        }
    }
    // Every strictly descending chain moves down this ranking, so it has at
    // most as many steps as there are codes.
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&i, &j| all[i].cmp(&all[j]));
    let mut longest = vec![0usize; all.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            ensure(all[j] < all[i], || format!("ranking inverts {} and {}", all[j], all[i]))?;
            longest[i] = longest[i].max(longest[j] + 1);
        }
    }
    let chain = longest.iter().max().copied().unwrap_or(0);
    ensure(chain + 1 == all.len(), || {
        format!("longest descending chain {chain} for {} codes", all.len())
    })?;
    Ok(format!(
        "{} codes, longest descending chain has {} steps",
        all.len(),
        chain
    ))
}

// 3. Embedding signatures.

/// Embedding ranks worked out by hand from the corpus proofs.
const HAND_RANKS: &[(&str, u32)] = &[
    ("and_ax", 2),
    ("ball_bex", 2),
    ("ball_ex", 2),
    ("coll", 1),
    ("cut", 4),
    ("cut0", 1),
    ("ext", 1),
    ("found", 2),
    ("found0", 2),
    ("found1", 2),
    ("or_taut", 3),
    ("pair", 1),
    ("ref", 1),
    ("sep", 1),
    ("taut0", 0),
    ("taut1", 2),
    ("taut2", 4),
    ("taut3", 6),
    ("union", 1),
];

fn hand_rank(name: &str) -> Result<u32, String> {
    HAND_RANKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, m)| *m)
        .ok_or_else(|| format!("no hand-computed rank for {name}"))
}

/// Rank of a hereditarily finite set from its Ackermann code.
fn code_rank(n: u64) -> u64 {
    (0..64)
        .filter(|i| (n >> i) & 1 == 1)
        .map(|i| 1 + code_rank(i))
        .max()
        .unwrap_or(0)
}

fn set_rank(s: &DeskSet) -> u64 {
    code_rank(s.as_concrete().and_then(HfSet::ackermann).expect("small concrete set"))
}

fn embedding_signatures() -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() >= 10, || {
        format!("corpus has only {} proofs", corpus.len())
    })?;
    for want in [
        "taut0", "taut1", "taut2", "taut3", "pair", "union", "coll", "found1", "ref", "cut",
    ] {
        ensure(corpus.iter().any(|(n, _)| n == want), || format!("corpus lacks {want}"))?;
    }
    let mut closed = 0;
    let mut terms = 0;
    for (name, p) in &corpus {
        let m = hand_rank(name)?;
        for pick in 0..3 {
            let assign = assignment(p, pick);
            let d = embed(p, pick);
            let threes: u64 = assign.iter().map(|(_, s)| 3 * set_rank(s)).sum();
            let want = OrdCode::omega_times(u64::from(m)).add(&OrdCode::nat(threes));
            ensure(*d.bound() == want && d.rank() == m, || {
                format!(
                    "{name}/{pick}: signature {:?}, expected bound {want} and rank {m}",
                    d.sig()
                )
            })?;
            ensure(*d.seq() == close(p, &assign), || {
                format!("{name}/{pick}: end sequent {}", d.seq())
            })?;
            if assign.is_empty() {
                closed += 1;
                ensure(*d.bound() == OrdCode::omega_times(u64::from(m)), || {
                    format!("{name}: closed bound {}", d.bound())
                })?;
            }
            terms += 1;
        }
    }
    ensure(closed > 0, || "no closed end sequent in the corpus".into())?;
    Ok(format!(
        "{} proofs, {terms} embeddings, {} closed",
        corpus.len(),
        closed / 3
    ))
}

fn close(p: &Proof, assign: &[(Var, DeskSet)]) -> Sequent {
    let pairs: Vec<(Var, Term)> = assign.iter().map(|(v, s)| (v.clone(), Term::name(s.clone()))).collect();
    p.end_sequent().unwrap().iter().map(|f| f.subst_all(&pairs)).collect()
}

// 4. Cut-elimination bound on the one-cut proof.

fn elimination_bound() -> Outcome {
    let p = proof("cut");
    let cuts = p.nodes().iter().filter(|n| matches!(n.rule, Rule::Cut { .. })).count();
    ensure(cuts == 1, || format!("the cut proof has {cuts} cuts"))?;
    let empty: Vec<(Var, DeskSet)> = assignment(&p, 0)
        .into_iter()
        .map(|(v, _)| (v, DeskSet::empty()))
        .collect();
    let d = Deriv::embed(p.clone(), &empty, &Hull::new()).map_err(|e| e.to_string())?;
    let m = d.rank();
    ensure(m == hand_rank("cut")?, || format!("embedding rank {m}"))?;
    let start = OrdCode::omega_times(u64::from(m));
    ensure(*d.bound() == start, || format!("embedding bound {}", d.bound()))?;
    let mut e = d;
    for _ in 0..m {
        e = Deriv::elim_cuts(&e).map_err(|e| e.to_string())?;
    }
    let mut want = codes::value(&start);
    for _ in 0..m {
        want = vec![if want == [Part::Big] {
            Part::Big
        } else {
            Part::Pow(want)
        }];
    }
    ensure(e.rank() == 0, || format!("rank {} after {m} rounds", e.rank()))?;
    ensure(*e.bound() == start.omega_tower(m), || format!("bound {}", e.bound()))?;
    ensure(codes::value(e.bound()) == want, || {
        format!("bound {} is not the evaluated tower", e.bound())
    })?;
    Ok(format!("m = {m}, bound {}", e.bound()))
}

// 5. Local correctness.

fn cut_free_rounds(d: &Deriv) -> Result<Vec<Deriv>, String> {
    let mut out = vec![d.clone()];
    while out.last().unwrap().rank() > 0 {
        let next = Deriv::elim_cuts(out.last().unwrap()).map_err(|e| e.to_string())?;
        out.push(next);
    }
    Ok(out)
}

fn local_correctness() -> Outcome {
    let mut checked = 0;
    let mut nodes = 0;
    for (name, p) in corpus() {
        for pick in 0..3 {
            for (round, d) in cut_free_rounds(&embed(&p, pick))?.iter().enumerate() {
                let r = check_local(d, 3, &Sampler::Default, N);
                ensure(r.passed(), || format!("{name}/{pick} round {round}: {r}"))?;
                checked += 1;
                nodes += r.visited;
            }
        }
    }
    let mut codes_hit: Vec<&str> = Vec::new();
    for (code, good, bad) in mutants() {
        let g = check_local(&good, 3, &Sampler::Default, N);
        ensure(g.passed(), || format!("unmutated {code} term: {g}"))?;
        let b = check_local(&bad, 3, &Sampler::Default, N);
        match &b.violation {
            Some(v) if v.code == code => codes_hit.push(code),
            _ => return Err(format!("mutant {code}: {b}")),
        }
    }
    ensure(codes_hit.len() >= 6, || format!("only {} mutants", codes_hit.len()))?;
    Ok(format!(
        "{checked} terms ({nodes} nodes) pass, {} mutants caught",
        codes_hit.len()
    ))
}

// 6. Soundness of cut-free outputs.

fn uses_reflection(p: &Proof) -> bool {
    p.nodes()
        .iter()
        .any(|n| matches!(n.rule, Rule::Axiom(Axiom::Reflection { .. })))
}

fn soundness() -> Outcome {
    let mut verified = 0;
    for (name, p) in corpus() {
        if uses_reflection(&p) {
            continue;
        }
        for pick in 0..3 {
            let e = cut_free_rounds(&embed(&p, pick))?.pop().unwrap();
            let v = eval_cutfree(&e, 14).map_err(|err| format!("{name}/{pick}: {err}"))?;
            ensure(v.is_verified(), || format!("{name}/{pick}: {v}"))?;
            ensure(true_sequent(e.seq()), || {
                format!("{name}/{pick}: oracle rejects {}", e.seq())
            })?;
            verified += 1;
        }
    }
    ensure(verified >= 10, || format!("only {verified} outputs"))?;
    Ok(format!(
        "{verified} cut-free outputs verified and confirmed by the oracle"
    ))
}

// 7. Reduction.

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

/// Every path of `d` ends in a leaf within `k` inferences.
fn expands_within(d: &Deriv, k: usize) -> bool {
    let Ok(v) = d.rule() else { return false };
    if v.tag() == RuleTag::Wedge && v.indices().is_some_and(|is| is.is_empty()) {
        return true;
    }
    if k == 0 {
        return false;
    }
    let indices = v.indices().unwrap_or_else(|| {
        HfSet::all_below_rank(3)
            .into_iter()
            .map(|s| Index::Set(DeskSet::Concrete(s)))
            .collect()
    });
    indices
        .iter()
        .all(|i| v.premise(i).is_ok_and(|p| expands_within(&p, k - 1)))
}

fn reduction_instances() -> Vec<(String, Formula, Deriv, Deriv)> {
    let sets = ["{}", "{{}}", "{{},{{}}}", "{{{}}}"];
    let mut axioms = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        let b = sets[(i + 1) % sets.len()];
        axioms.push(Axiom::Pair {
            a: Term::hf(a),
            b: Term::hf(b),
        });
        axioms.push(Axiom::Union { a: Term::hf(a) });
        axioms.push(Axiom::Separation {
            phi: f(&format!("(in v {b})")),
            var: Var::new("v"),
            set: Term::hf(a),
        });
    }
    let sides = [Sequent::new(), [f("(in {{}} {})")].into_iter().collect()];
    let mut out = Vec::new();
    for ax in &axioms {
        let c = ax.instance();
        let d1 = Deriv::axiom(ax, &Hull::new()).unwrap();
        let d1 = Deriv::weaken(&d1, &Sequent::new(), d1.bound().clone(), c.depth(), Hull::new()).unwrap();
        for side in &sides {
            let d0 = Deriv::taut(&c, side, &Hull::new()).unwrap();
            out.push((format!("{} {c}", ax.name()), c.clone(), d0, d1.clone()));
        }
    }
    // False Δ0 cut formulas, derived from true side formulas.
    for (c, side) in [
        ("(in {{}} {})", "(in {} {{}})"),
        ("(nin {} {{}})", "(ex z (in {{}} z))"),
        ("(bex w {{}} (in w w))", "(in {} {{}})"),
        ("(ball w {{}} (in {} w))", "(ex z (in {} z))"),
    ] {
        let (c, side) = (f(c), f(side));
        let d0 = Deriv::taut(&side, &[c.negate()].into_iter().collect(), &Hull::new()).unwrap();
        let d1 = Deriv::taut(&side, &[c.clone()].into_iter().collect(), &Hull::new()).unwrap();
        out.push((format!("false {c}"), c, d0, d1));
    }
    out
}

fn reduction() -> Outcome {
    let instances = reduction_instances();
    ensure(instances.len() >= 20, || format!("only {} instances", instances.len()))?;
    for (name, c, d0, d1) in &instances {
        ensure(expands_within(d0, 4) && expands_within(d1, 4), || {
            format!("{name}: inputs do not expand within 4")
        })?;
        let r = Deriv::reduce(c, d0, d1).map_err(|e| format!("{name}: {e}"))?;
        let seq = d0.seq().without(&c.negate()).union(&d1.seq().without(c));
        let want = Sig::new(Hull::new(), d0.bound().add(d1.bound()), d0.rank().max(d1.rank()), seq);
        ensure(*r.sig() == want, || format!("{name}: {:?}, expected {want:?}", r.sig()))?;
        let r0 = cut_free_rounds(&r)?.pop().unwrap();
        let v = eval_cutfree(&r0, 14).map_err(|e| format!("{name}: {e}"))?;
        ensure(v.is_verified(), || format!("{name}: {v}"))?;
        ensure(true_sequent(r.seq()), || format!("{name}: oracle rejects {}", r.seq()))?;
        let chk = check_local(&r, 4, &Sampler::Default, N);
        ensure(chk.passed(), || format!("{name}: {chk}"))?;
    }
    Ok(format!("{} instances", instances.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("ordinal laws", Duration::from_secs(30), ordinal_laws),
        ("well-foundedness", Duration::from_secs(60), well_foundedness),
        ("embedding signatures", Duration::from_secs(10), embedding_signatures),
        ("cut-elimination bound", Duration::from_secs(10), elimination_bound),
        ("local correctness", Duration::from_secs(120), local_correctness),
        ("soundness", Duration::from_secs(60), soundness),
        ("reduction", Duration::from_secs(60), reduction),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > *limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

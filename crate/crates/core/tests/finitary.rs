mod common;

use common::*;
use prooflab::finitary::{check_proof, diagnostics, parse_script, to_script};
use prooflab::syntax::parse_formula;
use prooflab::universe::eval_delta0;
use proptest::prelude::*;

#[test]
fn corpus_scripts_round_trip() {
    for (name, p) in corpus() {
        let again = parse_script(&to_script(&p)).unwrap();
        assert_eq!(to_script(&again), to_script(&p), "{name}");
        assert_eq!(again.end_sequent(), p.end_sequent(), "{name}");
    }
}

#[test]
fn invalid_proofs_are_rejected_with_a_reason() {
    let invalid = invalid_corpus();
    assert!(!invalid.is_empty());
    for (name, p) in invalid {
        let ds = diagnostics(&p, N);
        assert!(!ds.is_empty(), "{name} passed the checker");
        let want = match name.as_str() {
            "eigen" => "eigenvariable",
            "ref_class" => "reflection class violation",
            other => panic!("unexpected invalid proof {other}"),
        };
        assert!(ds[0].message.contains(want), "{name}: {}", ds[0]);
    }
}

#[test]
fn reflection_class_depends_on_n() {
    let p = invalid_corpus().into_iter().find(|(n, _)| n == "ref_class").unwrap().1;
    assert!(check_proof(&p, N).is_err());
    assert!(check_proof(&p, 3).is_ok());
}

fn set_literal() -> impl Strategy<Value = String> {
    proptest::sample::select(vec!["{}", "{{}}", "{{{}}}", "{{},{{}}}", "{{},{{}},{{{}}}}"]).prop_map(String::from)
}

fn delta0(depth: u32, scope: usize) -> BoxedStrategy<String> {
    let mut names: Vec<String> = (0..scope).map(|k| format!("u{k}")).collect();
    names.extend(["{}", "{{}}", "{{},{{}}}"].map(String::from));
    let term = proptest::sample::select(names);
    let atom = (term.clone(), term, any::<bool>())
        .prop_map(|(a, b, pos)| format!("({} {a} {b})", if pos { "in" } else { "nin" }))
        .boxed();
    if depth == 0 {
        return atom;
    }
    let v = format!("u{scope}");
    let w = v.clone();
    prop_oneof![
        atom,
        (delta0(depth - 1, scope), delta0(depth - 1, scope)).prop_map(|(a, b)| format!("(and {a} {b})")),
        (delta0(depth - 1, scope), delta0(depth - 1, scope)).prop_map(|(a, b)| format!("(or {a} {b})")),
        (set_literal(), delta0(depth - 1, scope + 1)).prop_map(move |(s, a)| format!("(bex {v} {s} {a})")),
        (set_literal(), delta0(depth - 1, scope + 1)).prop_map(move |(s, a)| format!("(ball {w} {s} {a})")),
    ]
    .boxed()
}

proptest! {
    #[test]
    fn delta0_evaluation_matches_the_oracle(src in delta0(3, 0)) {
        let a = parse_formula(&src).unwrap();
        prop_assert!(a.is_delta0());
        prop_assert_eq!(eval_delta0(&a).unwrap(), oracle::true_formula(&a));
        prop_assert_eq!(eval_delta0(&a.negate()).unwrap(), !oracle::true_formula(&a));
    }
}

//! Regenerates the proof corpus: `cargo run -p prooflab --example build_corpus -- proofs`.

use std::path::PathBuf;

use prooflab::finitary::{check_proof, to_script, Axiom, Proof, ProofBuilder};
use prooflab::syntax::{parse_formula, Formula, Term, Var};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn t(s: &str) -> Term {
    Term::var(s)
}

fn v(s: &str) -> Var {
    Var::new(s)
}

fn single(vars: &[&str], build: impl FnOnce(&mut ProofBuilder)) -> Proof {
    let mut b = ProofBuilder::new();
    b.declare_vars(vars);
    build(&mut b);
    b.finish()
}

fn axiom(vars: &[&str], ax: Axiom) -> Proof {
    single(vars, |b| {
        b.axiom(ax, []);
    })
}

fn log(vars: &[&str], a: &str) -> Proof {
    single(vars, |b| {
        b.log(f(a), []);
    })
}

fn corpus() -> Vec<(&'static str, Proof)> {
    vec![
        ("taut0", log(&["x", "y"], "(in x y)")),
        ("taut1", log(&["x"], "(ex z (in x z))")),
        ("taut2", log(&[], "(all u (ex v (in u v)))")),
        ("taut3", log(&["x"], "(ex u (all v (ex w (and (in v w) (in x u)))))")),
        ("pair", axiom(&["x", "y"], Axiom::Pair { a: t("x"), b: t("y") })),
        ("union", axiom(&["x"], Axiom::Union { a: t("x") })),
        (
            "sep",
            axiom(
                &["x", "y"],
                Axiom::Separation {
                    phi: f("(in v y)"),
                    var: v("v"),
                    set: t("x"),
                },
            ),
        ),
        (
            "coll",
            axiom(
                &["a"],
                Axiom::Collection {
                    phi: f("(in x y)"),
                    x: v("x"),
                    y: v("y"),
                    set: t("a"),
                },
            ),
        ),
        (
            "ext",
            axiom(
                &["a", "b", "c"],
                Axiom::Ext {
                    a: t("a"),
                    b: t("b"),
                    c: t("c"),
                },
            ),
        ),
        (
            "found",
            axiom(
                &[],
                Axiom::Foundation {
                    phi: f("(ex w (in v w))"),
                    var: v("v"),
                    inner: v("y"),
                },
            ),
        ),
        (
            "found0",
            axiom(
                &[],
                Axiom::Foundation {
                    phi: f("(bex w v (in w w))"),
                    var: v("v"),
                    inner: v("y"),
                },
            ),
        ),
        (
            "found1",
            axiom(
                &["x"],
                Axiom::Foundation {
                    phi: f("(ex w (and (in v w) (nin x w)))"),
                    var: v("v"),
                    inner: v("y"),
                },
            ),
        ),
        (
            "ref",
            axiom(
                &["x"],
                Axiom::Reflection {
                    phi: f("(ex w (in v w))"),
                    var: v("v"),
                    term: t("x"),
                },
            ),
        ),
        (
            "cut",
            single(&["x", "y"], |b| {
                let l = b.log(f("(in x z)"), []);
                let o = b.or(l, f("(or (nin x z) (nin y z))"));
                let e = b.ex(o, f("(ex z (in x z))"), t("z"));
                let a = b.all(e, f("(all z (or (nin x z) (nin y z)))"), "z");
                let p = b.axiom(Axiom::Pair { a: t("x"), b: t("y") }, [f("(ex z (in x z))")]);
                b.cut(a, p, f("(ex z (and (in x z) (in y z)))"));
            }),
        ),
        (
            "cut0",
            single(&["x", "y"], |b| {
                let l = b.log(f("(in x y)"), []);
                let r = b.log(f("(in x y)"), []);
                b.cut(l, r, f("(in x y)"));
            }),
        ),
        (
            "ball_bex",
            single(&["x"], |b| {
                let m = b.log(f("(in y x)"), []);
                let body = b.log(f("(in y x)"), []);
                let e = b.bex(m, body, f("(bex w x (in w x))"), t("y"));
                b.ball(e, f("(ball y x (bex w x (in w x)))"), "y");
            }),
        ),
        (
            "ball_ex",
            single(&["x"], |b| {
                let l = b.log(f("(in y x)"), []);
                let e = b.ex(l, f("(ex w (in y w))"), t("x"));
                b.ball(e, f("(ball y x (ex w (in y w)))"), "y");
            }),
        ),
        (
            "and_ax",
            single(&["x", "y"], |b| {
                let p = b.axiom(Axiom::Pair { a: t("x"), b: t("y") }, []);
                let u = b.axiom(Axiom::Union { a: t("x") }, []);
                let pair = Axiom::Pair { a: t("x"), b: t("y") }.instance();
                let union = Axiom::Union { a: t("x") }.instance();
                b.and(p, u, Formula::and(pair, union));
            }),
        ),
        (
            "or_taut",
            single(&["x"], |b| {
                let l = b.log(f("(ex z (in x z))"), []);
                b.or(l, f("(or (all z (nin x z)) (ex z (in x z)))"));
            }),
        ),
    ]
}

fn invalid() -> Vec<(&'static str, Proof)> {
    vec![
        (
            "eigen",
            single(&["x"], |b| {
                let l = b.log(f("(in y x)"), []);
                b.all(l, f("(all y (in y x))"), "y");
            }),
        ),
        (
            "ref_class",
            axiom(
                &["x"],
                Axiom::Reflection {
                    phi: f("(all a (ex b (all c (ex d (in a d)))))"),
                    var: v("v"),
                    term: t("x"),
                },
            ),
        ),
    ]
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "proofs".into()));
    std::fs::create_dir_all(dir.join("invalid")).expect("create corpus directory");
    for (name, proof) in corpus() {
        if let Err(d) = check_proof(&proof, 2) {
            panic!("{name}: {d}");
        }
        std::fs::write(dir.join(format!("{name}.proof")), to_script(&proof)).expect("write proof");
    }
    for (name, proof) in invalid() {
        assert!(check_proof(&proof, 2).is_err(), "{name} should be rejected");
        std::fs::write(dir.join("invalid").join(format!("{name}.proof")), to_script(&proof)).expect("write proof");
    }
}

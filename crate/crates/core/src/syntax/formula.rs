use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::universe::{DeskSet, HfSet};

/// A variable name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    /// The constant 0 for the empty set.
    Zero,
    /// A set name c_a.
    Name(DeskSet),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn name(s: impl Into<DeskSet>) -> Self {
        Term::Name(s.into())
    }

    pub fn hf(lit: &str) -> Self {
        Term::Name(DeskSet::Concrete(HfSet::parse(lit).expect("valid set literal")))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    /// The set a closed term denotes.
    pub fn denotation(&self) -> Option<DeskSet> {
        match self {
            Term::Var(_) => None,
            Term::Zero => Some(DeskSet::empty()),
            Term::Name(s) => Some(s.clone()),
        }
    }

    pub fn subst(&self, v: &Var, t: &Term) -> Term {
        match self {
            Term::Var(w) if w == v => t.clone(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::Name(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Negation-normal formula node. Negation appears only on atoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// `elem ∈ set` when `pos`, `elem ∉ set` otherwise.
    Mem {
        pos: bool,
        elem: Term,
        set: Term,
    },
    /// The opaque token ad^t ("t is a transitive model of KPω") or its negation.
    Ad {
        pos: bool,
        of: Term,
    },
    Or(Formula, Formula),
    And(Formula, Formula),
    BEx(Var, Term, Formula),
    BAll(Var, Term, Formula),
    Ex(Var, Formula),
    All(Var, Formula),
}

/// A shared, structurally compared formula.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(Arc<Node>);

/// Position of a formula in the Σ/Π hierarchy: the least `n` with the formula
/// in Σ_n and in Π_n respectively. Δ0 is `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Class {
    pub sigma: u32,
    pub pi: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Delta0,
    Sigma(u32),
    Pi(u32),
    /// In Σ_n and Π_n, but in neither class below n.
    Both(u32),
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Delta0 => write!(f, "Delta0"),
            Level::Sigma(n) => write!(f, "Sigma{n}"),
            Level::Pi(n) => write!(f, "Pi{n}"),
            Level::Both(n) => write!(f, "Sigma{n}&Pi{n}"),
        }
    }
}

impl Class {
    fn normalize(sigma: u32, pi: u32) -> Class {
        Class {
            sigma: sigma.min(pi + 1),
            pi: pi.min(sigma + 1),
        }
    }

    pub fn level(self) -> Level {
        if self.sigma == 0 {
            Level::Delta0
        } else if self.sigma < self.pi {
            Level::Sigma(self.sigma)
        } else if self.pi < self.sigma {
            Level::Pi(self.pi)
        } else {
            Level::Both(self.sigma)
        }
    }

    pub fn in_sigma(self, n: u32) -> bool {
        self.sigma <= n
    }

    pub fn in_pi(self, n: u32) -> bool {
        self.pi <= n
    }
}

impl Formula {
    pub fn new(node: Node) -> Self {
        Formula(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn mem(elem: Term, set: Term) -> Self {
        Formula::new(Node::Mem { pos: true, elem, set })
    }

    pub fn not_mem(elem: Term, set: Term) -> Self {
        Formula::new(Node::Mem { pos: false, elem, set })
    }

    pub fn ad(of: Term) -> Self {
        Formula::new(Node::Ad { pos: true, of })
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::new(Node::Or(a, b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::new(Node::And(a, b))
    }

    pub fn bex(v: Var, t: Term, a: Formula) -> Self {
        Formula::new(Node::BEx(v, t, a))
    }

    pub fn ball(v: Var, t: Term, a: Formula) -> Self {
        Formula::new(Node::BAll(v, t, a))
    }

    pub fn ex(v: Var, a: Formula) -> Self {
        Formula::new(Node::Ex(v, a))
    }

    pub fn all(v: Var, a: Formula) -> Self {
        Formula::new(Node::All(v, a))
    }

    /// `a → b`, read as `¬a ∨ b`.
    pub fn implies(a: &Formula, b: Formula) -> Self {
        Formula::or(a.negate(), b)
    }

    /// The Δ0 abbreviation `∀x∈a (x∈b) ∧ ∀x∈b (x∈a)`.
    pub fn equal(a: Term, b: Term) -> Self {
        let x = fresh_var_for_terms("x", &[&a, &b]);
        let xt = Term::Var(x.clone());
        Formula::and(
            Formula::ball(x.clone(), a.clone(), Formula::mem(xt.clone(), b.clone())),
            Formula::ball(x, b, Formula::mem(xt, a)),
        )
    }

    /// De Morgan dual.
    pub fn negate(&self) -> Formula {
        match self.node() {
            Node::Mem { pos, elem, set } => Formula::new(Node::Mem {
                pos: !pos,
                elem: elem.clone(),
                set: set.clone(),
            }),
            Node::Ad { pos, of } => Formula::new(Node::Ad {
                pos: !pos,
                of: of.clone(),
            }),
            Node::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Node::And(a, b) => Formula::or(a.negate(), b.negate()),
            Node::BEx(v, t, a) => Formula::ball(v.clone(), t.clone(), a.negate()),
            Node::BAll(v, t, a) => Formula::bex(v.clone(), t.clone(), a.negate()),
            Node::Ex(v, a) => Formula::all(v.clone(), a.negate()),
            Node::All(v, a) => Formula::ex(v.clone(), a.negate()),
        }
    }

    /// No unbounded quantifiers.
    pub fn is_delta0(&self) -> bool {
        match self.node() {
            Node::Mem { .. } | Node::Ad { .. } => true,
            Node::Or(a, b) | Node::And(a, b) => a.is_delta0() && b.is_delta0(),
            Node::BEx(_, _, a) | Node::BAll(_, _, a) => a.is_delta0(),
            Node::Ex(..) | Node::All(..) => false,
        }
    }

    pub fn class(&self) -> Class {
        match self.node() {
            Node::Mem { .. } | Node::Ad { .. } => Class { sigma: 0, pi: 0 },
            Node::Or(a, b) | Node::And(a, b) => {
                let (x, y) = (a.class(), b.class());
                Class::normalize(x.sigma.max(y.sigma), x.pi.max(y.pi))
            }
            Node::BEx(_, _, a) | Node::BAll(_, _, a) => a.class(),
            Node::Ex(_, a) => {
                let c = a.class();
                let s = c.sigma.min(c.pi + 1).max(1);
                Class { sigma: s, pi: s + 1 }
            }
            Node::All(_, a) => {
                let c = a.class();
                let p = c.pi.min(c.sigma + 1).max(1);
                Class { sigma: p + 1, pi: p }
            }
        }
    }

    pub fn level(&self) -> Level {
        self.class().level()
    }

    /// dp(A): 0 on Δ0, one more than the immediate subformulas otherwise.
    pub fn depth(&self) -> u32 {
        if self.is_delta0() {
            return 0;
        }
        match self.node() {
            Node::Or(a, b) | Node::And(a, b) => a.depth().max(b.depth()) + 1,
            Node::BEx(_, _, a) | Node::BAll(_, _, a) | Node::Ex(_, a) | Node::All(_, a) => a.depth() + 1,
            Node::Mem { .. } | Node::Ad { .. } => 0,
        }
    }

    /// k(A): the set names occurring in A.
    pub fn support(&self) -> BTreeSet<DeskSet> {
        let mut out = BTreeSet::new();
        self.collect_terms(&mut |t| {
            if let Term::Name(s) = t {
                out.insert(s.clone());
            }
        });
        out
    }

    fn collect_terms(&self, f: &mut impl FnMut(&Term)) {
        match self.node() {
            Node::Mem { elem, set, .. } => {
                f(elem);
                f(set);
            }
            Node::Ad { of, .. } => f(of),
            Node::Or(a, b) | Node::And(a, b) => {
                a.collect_terms(f);
                b.collect_terms(f);
            }
            Node::BEx(_, t, a) | Node::BAll(_, t, a) => {
                f(t);
                a.collect_terms(f);
            }
            Node::Ex(_, a) | Node::All(_, a) => a.collect_terms(f),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let term = |t: &Term, bound: &Vec<Var>, out: &mut BTreeSet<Var>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self.node() {
            Node::Mem { elem, set, .. } => {
                term(elem, bound, out);
                term(set, bound, out);
            }
            Node::Ad { of, .. } => term(of, bound, out),
            Node::Or(a, b) | Node::And(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Node::BEx(v, t, a) | Node::BAll(v, t, a) => {
                term(t, bound, out);
                bound.push(v.clone());
                a.free_vars_into(bound, out);
                bound.pop();
            }
            Node::Ex(v, a) | Node::All(v, a) => {
                bound.push(v.clone());
                a.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name used, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.all_vars_into(&mut out);
        out
    }

    fn all_vars_into(&self, out: &mut BTreeSet<Var>) {
        self.collect_terms(&mut |t| {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        });
        match self.node() {
            Node::BEx(v, _, a) | Node::BAll(v, _, a) | Node::Ex(v, a) | Node::All(v, a) => {
                out.insert(v.clone());
                a.all_vars_into(out);
            }
            Node::Or(a, b) | Node::And(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            _ => {}
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replaces free occurrences of `v` by `t`. Substituted terms are either
    /// closed or variables that do not clash with binders in `self`.
    pub fn subst(&self, v: &Var, t: &Term) -> Formula {
        match self.node() {
            Node::Mem { pos, elem, set } => Formula::new(Node::Mem {
                pos: *pos,
                elem: elem.subst(v, t),
                set: set.subst(v, t),
            }),
            Node::Ad { pos, of } => Formula::new(Node::Ad {
                pos: *pos,
                of: of.subst(v, t),
            }),
            Node::Or(a, b) => Formula::or(a.subst(v, t), b.subst(v, t)),
            Node::And(a, b) => Formula::and(a.subst(v, t), b.subst(v, t)),
            Node::BEx(w, s, a) => {
                let body = if w == v { a.clone() } else { a.subst(v, t) };
                Formula::bex(w.clone(), s.subst(v, t), body)
            }
            Node::BAll(w, s, a) => {
                let body = if w == v { a.clone() } else { a.subst(v, t) };
                Formula::ball(w.clone(), s.subst(v, t), body)
            }
            Node::Ex(w, a) => {
                if w == v {
                    self.clone()
                } else {
                    Formula::ex(w.clone(), a.subst(v, t))
                }
            }
            Node::All(w, a) => {
                if w == v {
                    self.clone()
                } else {
                    Formula::all(w.clone(), a.subst(v, t))
                }
            }
        }
    }

    /// Simultaneous substitution applied left to right.
    pub fn subst_all(&self, pairs: &[(Var, Term)]) -> Formula {
        pairs.iter().fold(self.clone(), |acc, (v, t)| acc.subst(v, t))
    }

    /// φ^c: every unbounded quantifier bounded by `c`.
    pub fn relativize(&self, c: &Term) -> Formula {
        match self.node() {
            Node::Mem { .. } | Node::Ad { .. } => self.clone(),
            Node::Or(a, b) => Formula::or(a.relativize(c), b.relativize(c)),
            Node::And(a, b) => Formula::and(a.relativize(c), b.relativize(c)),
            Node::BEx(v, t, a) => Formula::bex(v.clone(), t.clone(), a.relativize(c)),
            Node::BAll(v, t, a) => Formula::ball(v.clone(), t.clone(), a.relativize(c)),
            Node::Ex(v, a) => Formula::bex(v.clone(), c.clone(), a.relativize(c)),
            Node::All(v, a) => Formula::ball(v.clone(), c.clone(), a.relativize(c)),
        }
    }

    /// `∃z[ad^z ∧ (c∈z ∧ A^z)]` for a variable `z` fresh for `A` and `c`.
    pub fn reflection_target(&self, c: &Term) -> Formula {
        let mut avoid = self.all_vars();
        if let Term::Var(v) = c {
            avoid.insert(v.clone());
        }
        let z = fresh_var("z", &avoid);
        let zt = Term::Var(z.clone());
        Formula::ex(
            z,
            Formula::and(
                Formula::ad(zt.clone()),
                Formula::and(Formula::mem(c.clone(), zt.clone()), self.relativize(&zt)),
            ),
        )
    }

    /// Applies `f` to every term occurrence, binders untouched.
    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Formula {
        match self.node() {
            Node::Mem { pos, elem, set } => Formula::new(Node::Mem {
                pos: *pos,
                elem: f(elem),
                set: f(set),
            }),
            Node::Ad { pos, of } => Formula::new(Node::Ad { pos: *pos, of: f(of) }),
            Node::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Node::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Node::BEx(v, t, a) => Formula::bex(v.clone(), f(t), a.map_terms(f)),
            Node::BAll(v, t, a) => Formula::ball(v.clone(), f(t), a.map_terms(f)),
            Node::Ex(v, a) => Formula::ex(v.clone(), a.map_terms(f)),
            Node::All(v, a) => Formula::all(v.clone(), a.map_terms(f)),
        }
    }

    /// Writes the constant 0 as the name of the empty set, so that instances
    /// at ∅ compare equal to formulas written with 0.
    pub fn zero_as_name(&self) -> Formula {
        self.map_terms(&|t| match t {
            Term::Zero => Term::Name(DeskSet::empty()),
            other => other.clone(),
        })
    }

    /// Whether `self` is `∃z[ad^z ∧ (c∈z ∧ A^z)]` for some `z` not free in A.
    pub fn is_reflection_target(&self, a: &Formula, c: &Term) -> bool {
        let Node::Ex(z, body) = self.node() else { return false };
        if a.all_vars().contains(z) || c.as_var() == Some(z) {
            return false;
        }
        let zt = Term::Var(z.clone());
        *body
            == Formula::and(
                Formula::ad(zt.clone()),
                Formula::and(Formula::mem(c.clone(), zt.clone()), a.relativize(&zt)),
            )
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Mem { .. } | Node::Ad { .. } => 1,
            Node::Or(a, b) | Node::And(a, b) => 1 + a.size() + b.size(),
            Node::BEx(_, _, a) | Node::BAll(_, _, a) | Node::Ex(_, a) | Node::All(_, a) => 1 + a.size(),
        }
    }
}

/// A variable named after `base` that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<Var>) -> Var {
    let cand = Var::new(base);
    if !avoid.contains(&cand) {
        return cand;
    }
    (1..)
        .map(|i| Var::new(&format!("{base}{i}")))
        .find(|v| !avoid.contains(v))
        .unwrap()
}

fn fresh_var_for_terms(base: &str, terms: &[&Term]) -> Var {
    let avoid: BTreeSet<Var> = terms.iter().filter_map(|t| t.as_var().cloned()).collect();
    fresh_var(base, &avoid)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Mem { pos: true, elem, set } => write!(f, "(in {elem} {set})"),
            Node::Mem { pos: false, elem, set } => write!(f, "(nin {elem} {set})"),
            Node::Ad { pos: true, of } => write!(f, "(ad {of})"),
            Node::Ad { pos: false, of } => write!(f, "(nad {of})"),
            Node::Or(a, b) => write!(f, "(or {a} {b})"),
            Node::And(a, b) => write!(f, "(and {a} {b})"),
            Node::BEx(v, t, a) => write!(f, "(bex {v} {t} {a})"),
            Node::BAll(v, t, a) => write!(f, "(ball {v} {t} {a})"),
            Node::Ex(v, a) => write!(f, "(ex {v} {a})"),
            Node::All(v, a) => write!(f, "(all {v} {a})"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn negation_examples() {
        assert_eq!(p("(in a b)").negate(), p("(nin a b)"));
        assert_eq!(p("(ball x a (in x b))").negate(), p("(bex x a (nin x b))"));
        let f = p("(all x (or (ex y (in x y)) (nad x)))");
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(p("(ball x a (in x b))").level(), Level::Delta0);
        assert_eq!(p("(all x (ex y (in x y)))").level(), Level::Pi(2));
        assert_eq!(p("(or (in a b) (ex x (in x a)))").level(), Level::Sigma(1));
        assert_eq!(p("(or (ex x (in x a)) (all y (in y b)))").level(), Level::Both(2));
        assert_eq!(p("(ex x (all y (ex z (in z y))))").level(), Level::Sigma(3));
    }

    #[test]
    fn depth_examples() {
        assert_eq!(p("(ball x a (in x b))").depth(), 0);
        assert_eq!(p("(ex x (in x a))").depth(), 1);
        assert_eq!(p("(or (ex x (in x a)) (ex y (in y b)))").depth(), 2);
        assert_eq!(p("(ball x a (ex y (in x y)))").depth(), 2);
    }

    #[test]
    fn support_collects_names() {
        let f = p("(in {} {{}})");
        let names: Vec<String> = f.support().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["{}", "{{}}"]);
        assert!(p("(ex x (in x x))").support().is_empty());
    }

    #[test]
    fn relativization_examples() {
        let c = Term::var("c");
        assert_eq!(p("(ex x (in x a))").relativize(&c), p("(bex x c (in x a))"));
        assert_eq!(p("(in a b)").relativize(&c), p("(in a b)"));
        let pi3 = p("(all x (ex y (all z (in z y))))");
        assert_eq!(pi3.level(), Level::Pi(3));
        assert_eq!(pi3.relativize(&c).level(), Level::Delta0);
    }

    #[test]
    fn substitution_respects_binders() {
        let f = p("(and (in x a) (ex x (in x b)))");
        let g = f.subst(&Var::new("x"), &Term::hf("{}"));
        assert_eq!(g, p("(and (in {} a) (ex x (in x b)))"));
        assert_eq!(g.free_vars().len(), 2);
    }

    #[test]
    fn reflection_target_picks_fresh_binder() {
        let a = p("(all z (in z c))");
        let r = a.reflection_target(&Term::var("c"));
        assert_eq!(r, p("(ex z1 (and (ad z1) (and (in c z1) (ball z z1 (in z c)))))"));
        assert_eq!(r.level(), Level::Sigma(1));
        assert_eq!(r.depth(), 1);
    }
}

use std::collections::BTreeSet;

use crate::syntax::{fresh_var, Formula, Term, Var};

/// A theory axiom of KPΠ_{N+1} together with the witnesses that fix the
/// instance. Formulas may contain free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `a = b ∧ a ∈ c → b ∈ c`.
    Ext {
        a: Term,
        b: Term,
        c: Term,
    },
    Pair {
        a: Term,
        b: Term,
    },
    Union {
        a: Term,
    },
    Infinity,
    /// Δ0-separation of `phi(var)` from `set`.
    Separation {
        phi: Formula,
        var: Var,
        set: Term,
    },
    /// Δ0-collection for `phi(x, y)` over `set`.
    Collection {
        phi: Formula,
        x: Var,
        y: Var,
        set: Term,
    },
    /// Foundation for `phi(var)`; `inner` is the variable of the bounded
    /// quantifier in the hypothesis.
    Foundation {
        phi: Formula,
        var: Var,
        inner: Var,
    },
    /// Π_{N+1}-reflection for `phi(var)` at `term`.
    Reflection {
        phi: Formula,
        var: Var,
        term: Term,
    },
}

fn term_vars(ts: &[&Term]) -> BTreeSet<Var> {
    ts.iter().filter_map(|t| t.as_var().cloned()).collect()
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Ext { .. } => "ax:ext",
            Axiom::Pair { .. } => "ax:pair",
            Axiom::Union { .. } => "ax:union",
            Axiom::Infinity => "ax:inf",
            Axiom::Separation { .. } => "ax:sep",
            Axiom::Collection { .. } => "ax:coll",
            Axiom::Foundation { .. } => "ax:found",
            Axiom::Reflection { .. } => "ax:ref",
        }
    }

    /// Side conditions on the witnesses, with `n` the reflection parameter N.
    pub fn validate(&self, n: u32) -> Result<(), String> {
        match self {
            Axiom::Separation { phi, var, set } => {
                if !phi.is_delta0() {
                    return Err(format!("separation formula {phi} is not Delta0"));
                }
                if set.as_var() == Some(var) {
                    return Err(format!("separation bound {set} is the separated variable"));
                }
            }
            Axiom::Collection { phi, x, y, set } => {
                if !phi.is_delta0() {
                    return Err(format!("collection formula {phi} is not Delta0"));
                }
                if x == y {
                    return Err("collection variables coincide".into());
                }
                if set.as_var().is_some_and(|v| v == x || v == y) {
                    return Err(format!("collection bound {set} is a collected variable"));
                }
            }
            Axiom::Foundation { phi, var, inner } => {
                if inner == var || phi.all_vars().contains(inner) {
                    return Err(format!("foundation variable {inner} is not fresh for {phi}"));
                }
            }
            Axiom::Reflection { phi, .. } => {
                let class = phi.class();
                if !class.in_pi(n + 1) {
                    return Err(format!(
                        "reflection class violation: {phi} is {} but not in Pi{}",
                        class.level(),
                        n + 1
                    ));
                }
            }
            Axiom::Ext { .. } | Axiom::Pair { .. } | Axiom::Union { .. } | Axiom::Infinity => {}
        }
        Ok(())
    }

    /// The axiom instance as a single formula.
    pub fn instance(&self) -> Formula {
        match self {
            Axiom::Ext { a, b, c } => Formula::or(
                Formula::equal(a.clone(), b.clone()).negate(),
                Formula::or(
                    Formula::not_mem(a.clone(), c.clone()),
                    Formula::mem(b.clone(), c.clone()),
                ),
            ),
            Axiom::Pair { a, b } => {
                let z = Term::Var(fresh_var("z", &term_vars(&[a, b])));
                Formula::ex(
                    z.as_var().unwrap().clone(),
                    Formula::and(Formula::mem(a.clone(), z.clone()), Formula::mem(b.clone(), z)),
                )
            }
            Axiom::Union { a } => {
                let mut avoid = term_vars(&[a]);
                let z = fresh_var("z", &avoid);
                avoid.insert(z.clone());
                let y = fresh_var("y", &avoid);
                avoid.insert(y.clone());
                let x = fresh_var("x", &avoid);
                Formula::ex(
                    z.clone(),
                    Formula::ball(
                        y.clone(),
                        a.clone(),
                        Formula::ball(x.clone(), Term::Var(y), Formula::mem(Term::Var(x), Term::Var(z))),
                    ),
                )
            }
            Axiom::Infinity => {
                let [z, y, w, u] = ["z", "y", "w", "u"].map(Var::new);
                let t = |v: &Var| Term::Var(v.clone());
                Formula::ex(
                    z.clone(),
                    Formula::and(
                        Formula::mem(Term::Zero, t(&z)),
                        Formula::ball(
                            y.clone(),
                            t(&z),
                            Formula::bex(
                                w.clone(),
                                t(&z),
                                Formula::and(
                                    Formula::mem(t(&y), t(&w)),
                                    Formula::ball(u.clone(), t(&y), Formula::mem(t(&u), t(&w))),
                                ),
                            ),
                        ),
                    ),
                )
            }
            Axiom::Separation { phi, var, set } => {
                let mut avoid = phi.all_vars();
                avoid.extend(term_vars(&[set]));
                avoid.insert(var.clone());
                let z = fresh_var("z", &avoid);
                let (x, zt) = (Term::Var(var.clone()), Term::Var(z.clone()));
                Formula::ex(
                    z,
                    Formula::and(
                        Formula::ball(
                            var.clone(),
                            zt.clone(),
                            Formula::and(Formula::mem(x.clone(), set.clone()), phi.clone()),
                        ),
                        Formula::ball(var.clone(), set.clone(), Formula::implies(phi, Formula::mem(x, zt))),
                    ),
                )
            }
            Axiom::Collection { phi, x, y, set } => {
                let mut avoid = phi.all_vars();
                avoid.extend(term_vars(&[set]));
                avoid.extend([x.clone(), y.clone()]);
                let z = fresh_var("z", &avoid);
                Formula::or(
                    Formula::bex(x.clone(), set.clone(), Formula::all(y.clone(), phi.negate())),
                    Formula::ex(
                        z.clone(),
                        Formula::ball(
                            x.clone(),
                            set.clone(),
                            Formula::bex(y.clone(), Term::Var(z), phi.clone()),
                        ),
                    ),
                )
            }
            Axiom::Foundation { phi, var, inner } => {
                let at_inner = phi.subst(var, &Term::Var(inner.clone()));
                Formula::or(
                    Formula::ex(
                        var.clone(),
                        Formula::and(
                            Formula::ball(inner.clone(), Term::Var(var.clone()), at_inner),
                            phi.negate(),
                        ),
                    ),
                    Formula::all(var.clone(), phi.clone()),
                )
            }
            Axiom::Reflection { phi, var, term } => {
                let a = phi.subst(var, term);
                Formula::or(a.negate(), a.reflection_target(term))
            }
        }
    }

    /// Rewrites every witness: terms through `term`, formulas through
    /// `formula`, which is also told the variables the schema binds in it.
    pub fn map_witnesses(&self, term: &dyn Fn(&Term) -> Term, formula: &dyn Fn(&Formula, &[&Var]) -> Formula) -> Axiom {
        match self {
            Axiom::Ext { a, b, c } => Axiom::Ext {
                a: term(a),
                b: term(b),
                c: term(c),
            },
            Axiom::Pair { a, b } => Axiom::Pair { a: term(a), b: term(b) },
            Axiom::Union { a } => Axiom::Union { a: term(a) },
            Axiom::Infinity => Axiom::Infinity,
            Axiom::Separation { phi, var, set } => Axiom::Separation {
                phi: formula(phi, &[var]),
                var: var.clone(),
                set: term(set),
            },
            Axiom::Collection { phi, x, y, set } => Axiom::Collection {
                phi: formula(phi, &[x, y]),
                x: x.clone(),
                y: y.clone(),
                set: term(set),
            },
            Axiom::Foundation { phi, var, inner } => Axiom::Foundation {
                phi: formula(phi, &[var]),
                var: var.clone(),
                inner: inner.clone(),
            },
            Axiom::Reflection { phi, var, term: t } => Axiom::Reflection {
                phi: formula(phi, &[var]),
                var: var.clone(),
                term: term(t),
            },
        }
    }

    /// Replaces the free variable `v` by `t` in every witness. Bound witness
    /// variables are left alone.
    pub fn subst(&self, v: &Var, t: &Term) -> Axiom {
        self.map_witnesses(&|s| s.subst(v, t), &|phi, bound| {
            if bound.contains(&v) {
                phi.clone()
            } else {
                phi.subst(v, t)
            }
        })
    }
}

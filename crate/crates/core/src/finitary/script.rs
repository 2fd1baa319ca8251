//! The line-oriented proof script format:
//!
//! ```text
//! # comment
//! vars x y
//! param p rank w+1
//! n1 log (seq (nin x y) (in x y)) formula=(in x y)
//! n2 ex [n1] (seq (nin x y) (ex z (in x z))) main=(ex z (in x z)) term=y
//! ```
//!
//! The last node is the root.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::syntax::{
    formula_from_sexpr, parse_sexprs, parse_term, sequent_from_sexpr, Formula, ParamTable, Sexpr, Term, Var,
};
use crate::universe::Param;

use super::{Axiom, FinitaryError, Proof, ProofNode, Rule};

struct Line<'a> {
    no: usize,
    params: &'a ParamTable,
    keys: BTreeMap<String, Sexpr>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> FinitaryError {
        FinitaryError::Script {
            line: self.no,
            msg: msg.into(),
        }
    }

    fn take(&mut self, key: &str) -> Result<Sexpr, FinitaryError> {
        self.keys
            .remove(key)
            .ok_or_else(|| self.err(format!("missing `{key}=`")))
    }

    fn formula(&mut self, key: &str) -> Result<Formula, FinitaryError> {
        let e = self.take(key)?;
        formula_from_sexpr(&e, self.params).map_err(|e| self.err(e.to_string()))
    }

    fn term(&mut self, key: &str) -> Result<Term, FinitaryError> {
        let e = self.take(key)?;
        parse_term(&e, self.params).map_err(|e| self.err(e.to_string()))
    }

    fn var(&mut self, key: &str) -> Result<Var, FinitaryError> {
        match self.term(key)? {
            Term::Var(v) => Ok(v),
            other => Err(self.err(format!("`{key}=` expects a variable, got {other}"))),
        }
    }
}

pub fn parse_script(src: &str) -> Result<Proof, FinitaryError> {
    let mut params = ParamTable::new();
    let mut vars: Vec<Var> = Vec::new();
    let mut declared_vars = false;
    let mut raw: Vec<(usize, &str)> = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                declared_vars = true;
                vars.extend(rest.split_whitespace().map(Var::new));
                continue;
            }
        }
        if line.starts_with("param ") {
            let p = Param::parse_decl(line).map_err(|e| FinitaryError::Script {
                line: no,
                msg: e.to_string(),
            })?;
            params.declare(p);
            continue;
        }
        raw.push((no, line));
    }

    let mut proof = Proof::new(params.clone());
    if declared_vars {
        proof.declare_vars(vars);
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (no, line) in raw {
        let node = parse_node(no, line, &params, &ids)?;
        let label = node.label.clone();
        let id = proof.push(node);
        if ids.insert(label.clone(), id).is_some() {
            return Err(FinitaryError::Script {
                line: no,
                msg: format!("duplicate node id {label}"),
            });
        }
    }
    if proof.is_empty() {
        return Err(FinitaryError::Script {
            line: 0,
            msg: "no proof nodes".into(),
        });
    }
    Ok(proof)
}

fn parse_node(
    no: usize,
    line: &str,
    params: &ParamTable,
    ids: &HashMap<String, usize>,
) -> Result<ProofNode, FinitaryError> {
    let err = |msg: String| FinitaryError::Script { line: no, msg };
    let mut words = line.splitn(3, char::is_whitespace);
    let label = words.next().unwrap_or_default().to_string();
    let rule_name = words.next().ok_or_else(|| err("missing rule".into()))?.to_string();
    let mut rest = words.next().unwrap_or_default().trim_start();

    let mut premises = Vec::new();
    if let Some(after) = rest.strip_prefix('[') {
        let close = after.find(']').ok_or_else(|| err("unclosed premise list".into()))?;
        for p in after[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
        {
            let id = ids.get(p).ok_or_else(|| err(format!("unknown premise {p}")))?;
            premises.push(*id);
        }
        rest = &after[close + 1..];
    }

    let items = parse_sexprs(rest).map_err(|e| err(e.to_string()))?;
    let mut it = items.into_iter();
    let seq = it.next().ok_or_else(|| err("missing conclusion".into()))?;
    let conclusion = sequent_from_sexpr(&seq, params).map_err(|e| err(e.to_string()))?;

    let mut keys = BTreeMap::new();
    while let Some(item) = it.next() {
        let Some(atom) = item.as_atom() else {
            return Err(err(format!("expected key=value, got {item}")));
        };
        let Some((key, value)) = atom.split_once('=') else {
            return Err(err(format!("expected key=value, got {atom}")));
        };
        let value = if value.is_empty() {
            it.next().ok_or_else(|| err(format!("missing value for {key}")))?
        } else {
            Sexpr::Atom(value.to_string())
        };
        keys.insert(key.to_string(), value);
    }

    let mut l = Line { no, params, keys };
    let rule = match rule_name.as_str() {
        "log" => Rule::Log {
            formula: l.formula("formula")?,
        },
        "or" => Rule::Or {
            main: l.formula("main")?,
        },
        "and" => Rule::And {
            main: l.formula("main")?,
        },
        "bex" => Rule::BEx {
            main: l.formula("main")?,
            term: l.term("term")?,
        },
        "ball" => Rule::BAll {
            main: l.formula("main")?,
            eigen: l.var("eigen")?,
        },
        "ex" => Rule::Ex {
            main: l.formula("main")?,
            term: l.term("term")?,
        },
        "all" => Rule::All {
            main: l.formula("main")?,
            eigen: l.var("eigen")?,
        },
        "cut" => Rule::Cut {
            formula: l.formula("cut")?,
        },
        "ax:ext" => Rule::Axiom(Axiom::Ext {
            a: l.term("a")?,
            b: l.term("b")?,
            c: l.term("c")?,
        }),
        "ax:pair" => Rule::Axiom(Axiom::Pair {
            a: l.term("a")?,
            b: l.term("b")?,
        }),
        "ax:union" => Rule::Axiom(Axiom::Union { a: l.term("a")? }),
        "ax:inf" => Rule::Axiom(Axiom::Infinity),
        "ax:sep" => Rule::Axiom(Axiom::Separation {
            phi: l.formula("phi")?,
            var: l.var("var")?,
            set: l.term("set")?,
        }),
        "ax:coll" => Rule::Axiom(Axiom::Collection {
            phi: l.formula("phi")?,
            x: l.var("x")?,
            y: l.var("y")?,
            set: l.term("set")?,
        }),
        "ax:found" => Rule::Axiom(Axiom::Foundation {
            phi: l.formula("phi")?,
            var: l.var("var")?,
            inner: l.var("inner")?,
        }),
        "ax:ref" => Rule::Axiom(Axiom::Reflection {
            phi: l.formula("phi")?,
            var: l.var("var")?,
            term: l.term("term")?,
        }),
        other => return Err(l.err(format!("unknown rule `{other}`"))),
    };
    if let Some(k) = l.keys.keys().next() {
        return Err(l.err(format!("unexpected key `{k}=` for {rule_name}")));
    }
    Ok(ProofNode {
        label,
        rule,
        premises,
        conclusion,
    })
}

/// Renders a proof in the script format; `parse_script` reads it back.
pub fn to_script(proof: &Proof) -> String {
    let mut out = String::new();
    if let Some(vars) = proof.declared_vars() {
        let names: Vec<&str> = vars.iter().map(Var::name).collect();
        writeln!(out, "vars {}", names.join(" ")).unwrap();
    }
    for p in proof.params().params() {
        writeln!(out, "param {} rank {}", p.name(), p.rank()).unwrap();
    }
    for node in proof.nodes() {
        write!(out, "{} {}", node.label, node.rule.name()).unwrap();
        if !node.premises.is_empty() {
            let labels: Vec<&str> = node.premises.iter().map(|&p| proof.node(p).label.as_str()).collect();
            write!(out, " [{}]", labels.join(" ")).unwrap();
        }
        write!(out, " {}", node.conclusion).unwrap();
        for (k, v) in witnesses(&node.rule) {
            write!(out, " {k}={v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn witnesses(rule: &Rule) -> Vec<(&'static str, String)> {
    let s = |x: &dyn ToString| x.to_string();
    match rule {
        Rule::Log { formula } => vec![("formula", s(formula))],
        Rule::Or { main } | Rule::And { main } => vec![("main", s(main))],
        Rule::BEx { main, term } | Rule::Ex { main, term } => vec![("main", s(main)), ("term", s(term))],
        Rule::BAll { main, eigen } | Rule::All { main, eigen } => {
            vec![("main", s(main)), ("eigen", s(eigen))]
        }
        Rule::Cut { formula } => vec![("cut", s(formula))],
        Rule::Axiom(ax) => match ax {
            Axiom::Ext { a, b, c } => vec![("a", s(a)), ("b", s(b)), ("c", s(c))],
            Axiom::Pair { a, b } => vec![("a", s(a)), ("b", s(b))],
            Axiom::Union { a } => vec![("a", s(a))],
            Axiom::Infinity => vec![],
            Axiom::Separation { phi, var, set } => vec![("phi", s(phi)), ("var", s(var)), ("set", s(set))],
            Axiom::Collection { phi, x, y, set } => {
                vec![("phi", s(phi)), ("x", s(x)), ("y", s(y)), ("set", s(set))]
            }
            Axiom::Foundation { phi, var, inner } => {
                vec![("phi", s(phi)), ("var", s(var)), ("inner", s(inner))]
            }
            Axiom::Reflection { phi, var, term } => vec![("phi", s(phi)), ("var", s(var)), ("term", s(term))],
        },
    }
}

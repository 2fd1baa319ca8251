use std::collections::BTreeMap;

use crate::universe::{DeskSet, HfSet, Param};

use super::formula::{Formula, Term, Var};
use super::sequent::Sequent;
use super::sexpr::{parse_sexpr, Sexpr};
use super::SyntaxError;

/// Declared abstract parameters, referenced in formulas as `@name`.
#[derive(Debug, Clone, Default)]
pub struct ParamTable(BTreeMap<String, Param>);

impl ParamTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, p: Param) {
        self.0.insert(p.name().to_string(), p);
    }

    pub fn get(&self, name: &str) -> Option<&Param> {
        self.0.get(name)
    }

    pub fn params(&self) -> impl Iterator<Item = &Param> {
        self.0.values()
    }
}

pub fn parse_term(e: &Sexpr, params: &ParamTable) -> Result<Term, SyntaxError> {
    let Some(a) = e.as_atom() else {
        return Err(SyntaxError::Parse(format!("expected a term, got {e}")));
    };
    if a == "0" {
        Ok(Term::Zero)
    } else if a.starts_with('{') {
        let s = HfSet::parse(a).map_err(|err| SyntaxError::Parse(err.to_string()))?;
        Ok(Term::Name(DeskSet::Concrete(s)))
    } else if let Some(name) = a.strip_prefix('@') {
        params
            .get(name)
            .map(|p| Term::Name(DeskSet::Abstract(p.clone())))
            .ok_or_else(|| SyntaxError::Parse(format!("undeclared parameter @{name}")))
    } else if a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && a.chars().next().is_some_and(|c| c.is_alphabetic())
    {
        Ok(Term::var(a))
    } else {
        Err(SyntaxError::Parse(format!("bad term {a:?}")))
    }
}

fn parse_var(e: &Sexpr) -> Result<Var, SyntaxError> {
    match e.as_atom() {
        Some(a) if a.chars().next().is_some_and(|c| c.is_alphabetic()) => Ok(Var::new(a)),
        _ => Err(SyntaxError::Parse(format!("expected a variable, got {e}"))),
    }
}

pub fn formula_from_sexpr(e: &Sexpr, params: &ParamTable) -> Result<Formula, SyntaxError> {
    let Sexpr::List(items) = e else {
        return Err(SyntaxError::Parse(format!("expected a formula, got {e}")));
    };
    let Some(head) = items.first().and_then(Sexpr::as_atom) else {
        return Err(SyntaxError::Parse(format!("formula without operator: {e}")));
    };
    let args = &items[1..];
    let arity = |n: usize| -> Result<(), SyntaxError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(SyntaxError::Parse(format!("`{head}` takes {n} arguments in {e}")))
        }
    };
    let term = |i: usize| parse_term(&args[i], params);
    let sub = |i: usize| formula_from_sexpr(&args[i], params);
    match head {
        "in" | "nin" => {
            arity(2)?;
            let (t, s) = (term(0)?, term(1)?);
            Ok(if head == "in" {
                Formula::mem(t, s)
            } else {
                Formula::not_mem(t, s)
            })
        }
        "ad" | "nad" => {
            arity(1)?;
            let f = Formula::ad(term(0)?);
            Ok(if head == "ad" { f } else { f.negate() })
        }
        "eq" | "neq" => {
            arity(2)?;
            let f = Formula::equal(term(0)?, term(1)?);
            Ok(if head == "eq" { f } else { f.negate() })
        }
        "or" | "and" => {
            if args.len() < 2 {
                return Err(SyntaxError::Parse(format!("`{head}` needs two or more arguments")));
            }
            let mut parts = args
                .iter()
                .map(|a| formula_from_sexpr(a, params))
                .collect::<Result<Vec<_>, _>>()?;
            let mut acc = parts.pop().unwrap();
            while let Some(x) = parts.pop() {
                acc = if head == "or" {
                    Formula::or(x, acc)
                } else {
                    Formula::and(x, acc)
                };
            }
            Ok(acc)
        }
        "bex" | "ball" => {
            arity(3)?;
            let (v, t, a) = (parse_var(&args[0])?, term(1)?, sub(2)?);
            Ok(if head == "bex" {
                Formula::bex(v, t, a)
            } else {
                Formula::ball(v, t, a)
            })
        }
        "ex" | "all" => {
            arity(2)?;
            let (v, a) = (parse_var(&args[0])?, sub(1)?);
            Ok(if head == "ex" {
                Formula::ex(v, a)
            } else {
                Formula::all(v, a)
            })
        }
        "not" | "imp" | "->" | "iff" => Err(SyntaxError::NotNegationNormal(e.to_string())),
        other => Err(SyntaxError::Parse(format!("unknown connective `{other}`"))),
    }
}

pub fn parse_formula(s: &str) -> Result<Formula, SyntaxError> {
    parse_formula_with(s, &ParamTable::new())
}

pub fn parse_formula_with(s: &str, params: &ParamTable) -> Result<Formula, SyntaxError> {
    formula_from_sexpr(&parse_sexpr(s)?, params)
}

/// Parses `(seq A B …)`.
pub fn sequent_from_sexpr(e: &Sexpr, params: &ParamTable) -> Result<Sequent, SyntaxError> {
    match e {
        Sexpr::List(items) if items.first().and_then(Sexpr::as_atom) == Some("seq") => items[1..]
            .iter()
            .map(|x| formula_from_sexpr(x, params))
            .collect::<Result<Sequent, _>>(),
        _ => Err(SyntaxError::Parse(format!("expected (seq ...), got {e}"))),
    }
}

pub fn parse_sequent(s: &str) -> Result<Sequent, SyntaxError> {
    sequent_from_sexpr(&parse_sexpr(s)?, &ParamTable::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_rejects_non_negation_normal_input() {
        assert!(matches!(
            parse_formula("(not (in a b))"),
            Err(SyntaxError::NotNegationNormal(_))
        ));
        assert!(matches!(
            parse_formula("(imp (in a b) (in b a))"),
            Err(SyntaxError::NotNegationNormal(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "(in x {})",
            "(or (nin 0 y) (all z (ex w (and (in z w) (nad w)))))",
            "(ball x {{}} (bex y x (in y x)))",
        ] {
            assert_eq!(parse_formula(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parameters_must_be_declared() {
        assert!(parse_formula("(in @p {})").is_err());
        let mut tbl = ParamTable::new();
        tbl.declare(Param::parse_decl("param p rank w").unwrap());
        let f = parse_formula_with("(in @p {})", &tbl).unwrap();
        assert_eq!(f.support().len(), 2);
    }

    #[test]
    fn nary_connectives_nest_right() {
        assert_eq!(
            parse_formula("(or (in a b) (in b c) (in c a))").unwrap(),
            parse_formula("(or (in a b) (or (in b c) (in c a)))").unwrap()
        );
    }

    #[test]
    fn sequents_collapse_duplicates() {
        let s = parse_sequent("(seq (in a b) (in a b) (nin a b))").unwrap();
        assert_eq!(s.len(), 2);
    }
}

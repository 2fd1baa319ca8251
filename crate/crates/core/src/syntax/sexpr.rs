use std::fmt;

use super::SyntaxError;

/// A parsed S-expression. Set literals such as `{{},{{}}}` are single atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

impl Sexpr {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(a) => Some(a),
            Sexpr::List(_) => None,
        }
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(a) => write!(f, "{a}"),
            Sexpr::List(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<String>, SyntaxError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' || c == ')' {
            out.push(c.to_string());
            i += 1;
        } else if c == '{' {
            let start = i;
            let mut depth = 0i32;
            while i < chars.len() {
                match chars[i] {
                    '{' => depth += 1,
                    '}' => depth -= 1,
                    _ => {}
                }
                i += 1;
                if depth == 0 {
                    break;
                }
            }
            if depth != 0 {
                return Err(SyntaxError::Parse("unbalanced braces in set literal".into()));
            }
            out.push(chars[start..i].iter().filter(|c| !c.is_whitespace()).collect());
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !"(){}".contains(chars[i]) {
                i += 1;
            }
            out.push(chars[start..i].iter().collect());
        }
    }
    Ok(out)
}

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<Sexpr, SyntaxError> {
    let Some(tok) = tokens.get(*pos) else {
        return Err(SyntaxError::Parse("unexpected end of input".into()));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexpr::List(items));
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                    None => return Err(SyntaxError::Parse("missing ')'".into())),
                }
            }
        }
        ")" => Err(SyntaxError::Parse("unexpected ')'".into())),
        _ => Ok(Sexpr::Atom(tok.clone())),
    }
}

/// Parses exactly one S-expression.
pub fn parse_sexpr(s: &str) -> Result<Sexpr, SyntaxError> {
    let tokens = tokenize(s)?;
    let mut pos = 0;
    let e = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(SyntaxError::Parse(format!("trailing input after {e}")));
    }
    Ok(e)
}

/// Parses a sequence of S-expressions.
pub fn parse_sexprs(s: &str) -> Result<Vec<Sexpr>, SyntaxError> {
    let tokens = tokenize(s)?;
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < tokens.len() {
        out.push(parse_at(&tokens, &mut pos)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_literals_are_atoms() {
        let e = parse_sexpr("(in { } {{}, {{}}})").unwrap();
        assert_eq!(e.to_string(), "(in {} {{},{{}}})");
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        assert!(parse_sexpr("(in x").is_err());
        assert!(parse_sexpr("in x)").is_err());
        assert!(parse_sexpr("{{}").is_err());
    }
}

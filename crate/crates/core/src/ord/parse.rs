//! Text syntax for ordinal codes.
//!
//! ```text
//! expr  := term (('+' | '#') term)*
//! term  := atom ('*' nat)?
//! atom  := nat | 'W' | 'w' | 'w^' (nat | 'W' | 'w' | '(' expr ')')
//!        | 'w_' nat '(' expr ')' | '(' expr ')'
//! ```
//!
//! `+` is ordinal addition, `#` the natural sum, `*n` right multiplication by
//! a natural, `w_n(x)` the tower ω_n(x). Rendering with `Display` and parsing
//! back yields the same code.

use std::cmp::Ordering;

use super::{OrdCode, OrdError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), OrdError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> OrdError {
        OrdError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn nat(&mut self) -> Result<u64, OrdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("natural number out of range"))
    }

    fn expr(&mut self) -> Result<OrdCode, OrdError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'#') {
                acc = acc.nat_sum(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OrdCode, OrdError> {
        let a = self.atom()?;
        if self.eat(b'*') {
            let n = self.nat()?;
            Ok(a.mul_nat(n))
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<OrdCode, OrdError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(OrdCode::nat(self.nat()?)),
            Some(b'W') => {
                self.pos += 1;
                Ok(OrdCode::Omega)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'w') => {
                self.pos += 1;
                // no whitespace allowed between `w` and `^` / `_`
                match self.src.get(self.pos) {
                    Some(b'^') => {
                        self.pos += 1;
                        let exp = match self.peek() {
                            Some(b'(') => {
                                self.pos += 1;
                                let e = self.expr()?;
                                self.expect(b')')?;
                                e
                            }
                            Some(c) if c.is_ascii_digit() => OrdCode::nat(self.nat()?),
                            Some(b'W') => {
                                self.pos += 1;
                                OrdCode::Omega
                            }
                            Some(b'w') => {
                                self.pos += 1;
                                OrdCode::omega_small()
                            }
                            _ => return Err(self.error("expected exponent")),
                        };
                        Ok(exp.omega_exp())
                    }
                    Some(b'_') => {
                        self.pos += 1;
                        let n = self.nat()?;
                        self.expect(b'(')?;
                        let base = self.expr()?;
                        self.expect(b')')?;
                        let n = u32::try_from(n).map_err(|_| self.error("tower too tall"))?;
                        Ok(base.omega_tower(n))
                    }
                    _ => Ok(OrdCode::omega_small()),
                }
            }
            _ => Err(self.error("expected an ordinal term")),
        }
    }

    fn finish(&mut self) -> Result<(), OrdError> {
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Parses an ordinal expression and returns its normal form.
pub fn parse_ord(s: &str) -> Result<OrdCode, OrdError> {
    let mut p = Parser::new(s);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A parsed ordinal query: either a single expression or a comparison `a ? b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdQuery {
    Value(OrdCode),
    Compare(OrdCode, OrdCode),
}

impl OrdQuery {
    /// Renders the answer: the normal form, or `less` / `equal` / `greater`.
    pub fn answer(&self) -> String {
        match self {
            OrdQuery::Value(a) => a.to_string(),
            OrdQuery::Compare(a, b) => ordering_word(a.cmp_code(b)).to_string(),
        }
    }
}

pub fn ordering_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

pub fn parse_query(s: &str) -> Result<OrdQuery, OrdError> {
    let mut p = Parser::new(s);
    let a = p.expr()?;
    if p.eat(b'?') {
        let b = p.expr()?;
        p.finish()?;
        Ok(OrdQuery::Compare(a, b))
    } else {
        p.finish()?;
        Ok(OrdQuery::Value(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_examples() {
        assert_eq!(parse_query("w^(W+1) ? W").unwrap().answer(), "greater");
        assert_eq!(parse_query("W + W").unwrap().answer(), "W*2");
        assert_eq!(parse_query("W*3 + 2 + 1").unwrap().answer(), "W*3+3");
        assert_eq!(parse_query("w_0(W+1)").unwrap().answer(), "W+1");
        assert_eq!(parse_query("3 + W").unwrap().answer(), "W");
        assert_eq!(parse_query("1 # W").unwrap().answer(), "W+1");
        assert_eq!(parse_query("w^W").unwrap().answer(), "W");
        assert_eq!(parse_query("w_2(W+1)").unwrap().answer(), "w^(w^(W+1))");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ord("W +").is_err());
        assert!(parse_ord("x").is_err());
        assert!(parse_ord("(W").is_err());
        assert!(parse_ord("W W").is_err());
    }

    #[test]
    fn sub_omega_rendering_round_trips() {
        for s in ["0", "7", "w", "w*3+2", "w^2+w", "w^(w+1)*2+w^3", "w^(w^w)"] {
            let a = parse_ord(s).unwrap();
            assert_eq!(a.to_string(), s);
        }
    }
}

//! Expression grammar.
//!
//! ```text
//! sum     := ['+'|'-'] tensor (('+'|'-') tensor)*
//! tensor  := product ('ox' product)*
//! product := power (('*'|'/') power)*
//! power   := atom ['^' ['-'] INT]
//! atom    := INT | 'i' | 'eps' | PARAM | GENERATOR | '(' sum ')' | '[' sum ',' sum ']'
//! ```
//!
//! `ox` places its operands in consecutive tensor slots starting at 1.
//! Negative powers and division are allowed only for invertible scalars.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Element, MAX_SLOT};
use crate::scalars::{GaussianRational, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if "+-*/^()[],".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(Error::syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Names an expression may refer to.
#[derive(Debug, Clone, Copy)]
pub struct Scope<'a> {
    pub alphabet: &'a Arc<Alphabet>,
    pub params: &'a [String],
    pub order: u32,
}

pub const RESERVED: [&str; 3] = ["i", "eps", "ox"];

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    scope: Scope<'a>,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn constant(&self, c: GaussianRational) -> Element {
        Element::scalar(self.scope.alphabet, Scalar::constant(c, self.scope.order))
    }

    fn sum(&mut self) -> Result<Element> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.tensor()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.tensor()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.tensor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn is_ox(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "ox")
    }

    fn tensor(&mut self) -> Result<Element> {
        let first_col = self.col();
        let first = self.product()?;
        if !self.is_ox() {
            return Ok(first);
        }
        let mut parts = vec![(first_col, first)];
        while self.is_ox() {
            self.pos += 1;
            let col = self.col();
            parts.push((col, self.product()?));
        }
        if parts.len() > MAX_SLOT as usize {
            return Err(Error::syntax(self.line, first_col, "too many tensor factors"));
        }
        let mut acc = Element::one(self.scope.alphabet, self.scope.order);
        for (k, (col, part)) in parts.into_iter().enumerate() {
            if part.max_slot() != 0 {
                return Err(Error::syntax(self.line, col, "nested tensor product"));
            }
            acc = acc.try_mul(&part.tensor_embed(k as u8 + 1)?)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.power()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.power()?;
                let inv = d
                    .as_scalar()
                    .and_then(|s| s.try_inverse().ok())
                    .ok_or_else(|| Error::syntax(self.line, col, "division by a non-invertible expression"))?;
                acc = acc.scale(&inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return Err(self.err("expected an integer exponent")),
        };
        self.pos += 1;
        let n: u32 = n.try_into().map_err(|_| Error::syntax(self.line, col, "exponent too large"))?;
        if !neg {
            return base.pow(n);
        }
        let inv = base
            .as_scalar()
            .and_then(|s| s.try_inverse().ok())
            .ok_or_else(|| Error::syntax(self.line, col, "negative power of a non-invertible expression"))?;
        Ok(Element::scalar(self.scope.alphabet, inv.pow(n)))
    }

    fn atom(&mut self) -> Result<Element> {
        let col = self.col();
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(self.constant(GaussianRational::new(BigRational::from_integer(n), BigRational::zero()))),
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let x = self.sum()?;
                self.expect(',')?;
                let y = self.sum()?;
                self.expect(']')?;
                x.commutator(&y)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(self.constant(GaussianRational::i())),
                "eps" => Ok(Element::scalar(self.scope.alphabet, Scalar::eps(self.scope.order))),
                "ox" => Err(Error::syntax(self.line, col, "`ox` needs a left operand")),
                _ => {
                    if self.scope.alphabet.index(&name).is_some() {
                        Element::generator(self.scope.alphabet, &name, self.scope.order)
                    } else if self.scope.params.contains(&name) {
                        Ok(Element::scalar(self.scope.alphabet, Scalar::param(&name, 1, self.scope.order)))
                    } else {
                        Err(Error::UnknownSymbol { name, line: self.line, col })
                    }
                }
            },
            Tok::Sym(c) => Err(Error::syntax(self.line, col, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` located at (`line`, `col0`) of some source; positions in
/// errors are 1-based.
pub fn parse_at(text: &str, scope: Scope<'_>, line: usize, col0: usize) -> Result<Element> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut p = Parser { toks, pos: 0, scope, line, end_col };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_in(text: &str, scope: Scope<'_>) -> Result<Element> {
    parse_at(text, scope, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::LAMBDA;

    fn scope_parts() -> (Arc<Alphabet>, Vec<String>) {
        (Alphabet::new(["J", "K", "M", "N", "L"]).unwrap(), vec!["lam".to_string(), "q".to_string()])
    }

    fn parse(text: &str) -> Result<Element> {
        let (a, p) = scope_parts();
        parse_in(text, Scope { alphabet: &a, params: &p, order: 1 })
    }

    #[test]
    fn commutator_and_powers() {
        let e = parse("[L,K] - lam*M^2").unwrap();
        assert_eq!(e.to_string(), "L*K - lam*M^2 - K*L");
        assert_eq!(parse("q^-1*q").unwrap().to_string(), "1");
    }

    #[test]
    fn tensor_factors_go_to_slots() {
        let e = parse("K ox M + M ox K").unwrap();
        assert_eq!(e.max_slot(), 2);
        assert_eq!(e.to_string(), "M ox K + K ox M");
        assert_eq!(parse("1 ox L").unwrap().to_string(), "1 ox L");
    }

    #[test]
    fn rationals_and_imaginary_unit() {
        let e = parse("(L - 1/2*lam*M + i*N)").unwrap();
        assert_eq!(e.to_string(), "L + i*N - 1/2*lam*M");
        let e = parse("(1+i)*(1-i)").unwrap();
        assert_eq!(e.to_string(), "2");
        assert!(parse("eps*eps").unwrap().is_zero());
        let lam = parse("lam").unwrap();
        assert_eq!(lam.as_scalar().unwrap(), Scalar::param(LAMBDA, 1, 1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("K + Z").unwrap_err(),
            Error::UnknownSymbol { name: "Z".into(), line: 1, col: 5 }
        );
        assert!(matches!(parse("K +").unwrap_err(), Error::Syntax { col: 4, .. }));
        assert!(matches!(parse("K ^ -1").unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(parse("K / M").unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(parse("K ) ").unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(parse("K # M").unwrap_err(), Error::Syntax { col: 3, .. }));
        assert!(matches!(parse("(K ox M) ox N").unwrap_err(), Error::Syntax { .. }));
    }
}

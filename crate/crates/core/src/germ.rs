//! Germ expressions: `1/3*x^3 - t^2*x*y^10 + y^12` and friends.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := uint | 'x' | 'y' | 'i' | ident | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{Coeff, GaussRat, Rat};
use crate::puiseux::BivarPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct GermExpr {
    pub source: String,
    pub poly: BivarPoly,
    pub bindings: BTreeMap<String, Rat>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_alphanumeric() || *d == '_') {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            it.next();
        } else {
            return Err(Error::Parse {
                offset: pos,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    bindings: &'a BTreeMap<String, Rat>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.unary()?;
        while let Tok::Op(op @ ('*' | '/')) = *self.peek() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
                continue;
            }
            let c = rhs.coeff(0, 0);
            let constant = rhs.terms().all(|(k, _)| *k == (0, 0));
            let inv = match c.as_exact() {
                Some(g) if constant && !g.is_zero() => g.inv().expect("nonzero"),
                _ => {
                    return Err(Error::Parse {
                        offset: at,
                        message: "division by a non-constant or zero".into(),
                    })
                }
            };
            acc = acc.scale(&Coeff::exact(inv));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BivarPoly> {
        if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let Tok::Num(n) = self.peek().clone() else {
            return self.fail("expected a nonnegative integer exponent");
        };
        let Ok(e) = u32::try_from(n) else {
            return self.fail("exponent too large");
        };
        self.pos += 1;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        let tok = self.peek().clone();
        let out = match tok {
            Tok::Num(n) => BivarPoly::constant(Coeff::from_rat(Rat::from_integer(n))),
            Tok::Ident(name) => match name.as_str() {
                "x" => BivarPoly::x(),
                "y" => BivarPoly::y(),
                "i" => BivarPoly::constant(Coeff::i()),
                _ => match self.bindings.get(&name) {
                    Some(v) => BivarPoly::constant(Coeff::from_rat(v.clone())),
                    None => return Err(Error::UnboundParameter(name)),
                },
            },
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.fail("expected ')'");
                }
                inner
            }
            Tok::Op(c) => return self.fail(format!("unexpected '{c}'")),
            Tok::End => return self.fail("unexpected end of input"),
        };
        self.pos += 1;
        Ok(out)
    }
}

pub fn parse_germ(text: &str, bindings: &BTreeMap<String, Rat>) -> Result<GermExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        bindings,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected trailing input");
    }
    Ok(GermExpr {
        source: text.to_string(),
        poly,
        bindings: bindings.clone(),
    })
}

/// Parses a germ with no parameters.
pub fn parse_poly(text: &str) -> Result<BivarPoly> {
    parse_germ(text, &BTreeMap::new()).map(|g| g.poly)
}

/// Canonical text of a polynomial, accepted back by [`parse_germ`].
pub fn render(poly: &BivarPoly) -> String {
    poly.render()
}

/// Midpoint of a polynomial's coefficient, for tests and reports.
pub fn exact_coeff(poly: &BivarPoly, i: u32, j: u32) -> Option<GaussRat> {
    poly.coeff(i, j).as_exact().cloned()
}

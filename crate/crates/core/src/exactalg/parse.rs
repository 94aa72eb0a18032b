//! Recursive-descent parser for the canonical rational-function strings.
//!
//! Grammar (whitespace ignored):
//!   expr   := term { ('+'|'-') term }
//!   term   := unary { ('*'|'/') unary }
//!   unary  := '-' unary | power
//!   power  := atom [ '^' integer ]
//!   atom   := '(' expr ')' | integer | variable
//!
//! Variables are exactly the fixed set: alpha, q, t, a, u, N, z.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{RatFunc, Var};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer literal '{digits}'")))?;
                out.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = &s[start..i];
                match Var::from_name(name) {
                    Some(v) => out.push(Tok::Var(v)),
                    None => {
                        return Err(Error::Parse(format!("unknown variable '{name}'")));
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div_checked(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    if neg {
                        return base.pow_i(-(e as i64));
                    }
                    return Ok(base.pow_u(e));
                }
                _ => return Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(Tok::Int(n)) => Ok(RatFunc::rational(BigRational::from_integer(n))),
            Some(Tok::Var(v)) => Ok(RatFunc::var(v)),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub(crate) fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(out)
}

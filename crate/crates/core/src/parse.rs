//! Polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' unary) | unary)*        juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)*
//! atom   := integer | letter | '(' expr ')'
//! ```
//!
//! Symbols are single ASCII letters, so `x^2y` reads as `x^2 * y`.
//! Binary operators are left-associative; `^` binds tighter than unary minus,
//! which binds tighter than multiplication.

use crate::bipoly::BiPoly;
use crate::fppoly::{PrimeField, UniPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(u128),
    Sym { name: char, pos: usize },
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u128),
    Sym(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u128>().map_err(|_| syntax(start, "integer literal too large"))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => Tok::Sym(c as char),
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => return Err(syntax(i, format!("unexpected character `{}`", text[i..].chars().next().unwrap()))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Int(_) | Tok::Sym(_) | Tok::LParen) => {
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let mut base = self.atom()?;
        while self.peek() == Some(Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| syntax(pos, "exponent too large"))?;
                    base = PolyExpr::Pow(Box::new(base), e);
                }
                Some(Tok::Minus) => return Err(Error::NegativeExponent { pos }),
                _ => return Err(syntax(pos, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(PolyExpr::Int(n)),
            Some(Tok::Sym(name)) => Ok(PolyExpr::Sym { name, pos }),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some(_) => Err(syntax(pos, "expected a number, symbol or `(`")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

impl PolyExpr {
    pub fn parse(text: &str) -> Result<PolyExpr> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(syntax(0, "empty expression"));
        }
        let mut p = Parser { toks, at: 0, end: text.len() };
        let e = p.expr()?;
        if p.at < p.toks.len() {
            return Err(syntax(p.pos(), "unexpected trailing input"));
        }
        Ok(e)
    }

    /// Expands into `F_p[x, y]`, mapping `vars.0 -> x` and `vars.1 -> y`.
    pub fn to_bipoly(&self, field: PrimeField, vars: (char, char)) -> Result<BiPoly> {
        Ok(match self {
            PolyExpr::Int(n) => BiPoly::constant(field, (n % field.modulus() as u128) as u64),
            PolyExpr::Sym { name, pos } => {
                if *name == vars.0 {
                    BiPoly::x(field)
                } else if *name == vars.1 {
                    BiPoly::y(field)
                } else {
                    return Err(Error::UnknownSymbol { pos: *pos, symbol: name.to_string() });
                }
            }
            PolyExpr::Neg(a) => -&a.to_bipoly(field, vars)?,
            PolyExpr::Add(a, b) => &a.to_bipoly(field, vars)? + &b.to_bipoly(field, vars)?,
            PolyExpr::Sub(a, b) => &a.to_bipoly(field, vars)? - &b.to_bipoly(field, vars)?,
            PolyExpr::Mul(a, b) => &a.to_bipoly(field, vars)? * &b.to_bipoly(field, vars)?,
            PolyExpr::Pow(a, e) => a.to_bipoly(field, vars)?.pow(*e),
        })
    }
}

/// Parses a polynomial in the two given symbols.
pub fn parse_bipoly(text: &str, field: PrimeField, vars: (char, char)) -> Result<BiPoly> {
    PolyExpr::parse(text)?.to_bipoly(field, vars)
}

/// Parses a polynomial in a single symbol.
pub fn parse_unipoly(text: &str, field: PrimeField, var: char) -> Result<UniPoly> {
    // a symbol that cannot be typed stands in for the unused second variable
    let bi = parse_bipoly(text, field, (var, '\0'))?;
    let mut coeffs = Vec::new();
    for (m, c) in bi.terms() {
        debug_assert_eq!(m.y, 0);
        let i = m.x as usize;
        if coeffs.len() <= i {
            coeffs.resize(i + 1, 0);
        }
        coeffs[i] = c;
    }
    Ok(UniPoly::new(field, coeffs))
}

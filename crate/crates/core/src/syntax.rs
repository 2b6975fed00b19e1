//! Concrete text syntax for elements.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := [rational '*'] factor ('^' factor)*
//! factor   := '0' | '1' | 'e' digits | '{' expr (',' expr)* '}' | '(' expr ')'
//! rational := int ['/' int]
//! ```
//!
//! `{a, b}` denotes `ι(a) ∧ ι(b)`, `^` is the wedge product, `1` is the
//! empty set and `0` the zero vector.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{QsetError, Result};
use crate::grassmann::{Element, Rational};
use crate::hfs::Hfs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `0`, the zero vector.
    Zero,
    /// `1`, the empty set.
    Empty,
    /// `e<n>`, the basis element with serial `n`.
    Serial(BigUint),
    /// `{a, b, …}`.
    Assoc(Vec<Expr>),
    /// `a ^ b ^ …`.
    Wedge(Vec<Expr>),
    /// Signed, scaled terms.
    Sum(Vec<(Rational, Expr)>),
    Paren(Box<Expr>),
}

impl Expr {
    /// Evaluates to a canonical element, refusing any intermediate set of
    /// rank above `rank_limit`.
    pub fn eval(&self, rank_limit: u32) -> Result<Element> {
        let guard = |e: Element| {
            let rank = e.rank();
            if rank > rank_limit {
                Err(QsetError::RankGuard {
                    rank,
                    limit: rank_limit,
                })
            } else {
                Ok(e)
            }
        };
        match self {
            Expr::Zero => Ok(Element::zero()),
            Expr::Empty => Ok(Element::one()),
            Expr::Serial(n) => guard(Element::from_hfs(Hfs::from_serial(n))),
            Expr::Assoc(items) => {
                let mut acc = Element::one();
                for item in items {
                    acc = acc.wedge(&item.eval(rank_limit)?.iota_guarded(rank_limit)?);
                }
                Ok(acc)
            }
            Expr::Wedge(items) => {
                let mut acc = Element::one();
                for item in items {
                    acc = acc.wedge(&item.eval(rank_limit)?);
                }
                Ok(acc)
            }
            Expr::Sum(terms) => {
                let mut acc = Element::zero();
                for (c, t) in terms {
                    acc = &acc + &t.eval(rank_limit)?.scale(c);
                }
                Ok(acc)
            }
            Expr::Paren(inner) => inner.eval(rank_limit),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Basis(BigUint),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn syntax(offset: usize, message: impl Into<String>) -> QsetError {
    QsetError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((i, tok));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let end = digits(i);
            let n = text[i..end].parse::<BigUint>().expect("ascii digits");
            out.push((i, Tok::Int(n)));
            i = end;
        } else if c == b'e' {
            let end = digits(i + 1);
            if end == i + 1 {
                return Err(syntax(i + 1, "expected digits after 'e'"));
            }
            let n = text[i + 1..end].parse::<BigUint>().expect("ascii digits");
            out.push((i, Tok::Basis(n)));
            i = end;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(syntax(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        loop {
            let (c, t) = self.term()?;
            terms.push((if negate { -c } else { c }, t));
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        if terms.len() == 1 && terms[0].0.is_one() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<(Rational, Expr)> {
        let mut coef = Rational::one();
        if let Some(Tok::Int(_)) = self.peek() {
            if matches!(self.peek_at(1), Some(Tok::Slash) | Some(Tok::Star)) {
                coef = self.rational()?;
                self.expect(Tok::Star, "'*' after coefficient")?;
            }
        }
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        let expr = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Wedge(factors)
        };
        Ok((coef, expr))
    }

    fn rational(&mut self) -> Result<Rational> {
        let Some(Tok::Int(p)) = self.bump() else {
            unreachable!("caller checked for an integer")
        };
        let mut q = BigUint::one();
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(d)) if !d.is_zero() => q = d,
                Some(Tok::Int(_)) => return Err(syntax(at, "zero denominator")),
                _ => return Err(syntax(at, "expected denominator")),
            }
        }
        Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn factor(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) if n.is_zero() => Ok(Expr::Zero),
            Some(Tok::Int(n)) if n.is_one() => Ok(Expr::Empty),
            Some(Tok::Int(_)) => Err(syntax(at, "bare integer; write a coefficient as 'k*factor'")),
            Some(Tok::Basis(n)) => Ok(Expr::Serial(n)),
            Some(Tok::LBrace) => {
                let mut items = vec![self.expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                self.expect(Tok::RBrace, "',' or '}'")?;
                Ok(Expr::Assoc(items))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            Some(_) => Err(syntax(at, "expected '0', '1', 'e<n>', '{' or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(text.len(), "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let expr = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Parses and evaluates in one step.
pub fn parse_element(text: &str, rank_limit: u32) -> Result<Element> {
    parse(text)?.eval(rank_limit)
}

/// Parses text that must denote a single basis set with coefficient 1.
pub fn parse_set(text: &str, rank_limit: u32) -> Result<Hfs> {
    let e = parse_element(text, rank_limit)?;
    e.as_basis()
        .map(|m| m.as_hfs().clone())
        .ok_or_else(|| QsetError::Invalid(format!("{text:?} is not a single basis set")))
}

/// Deterministic text form: terms by descending serial, unit coefficients
/// omitted. `parse` inverts it exactly.
pub fn print_canonical(a: &Element) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in a.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if !magnitude.is_one() {
            write!(out, "{magnitude}*").expect("write to String");
        }
        write!(out, "{m}").expect("write to String");
    }
    out
}

//! Text grammar for polynomials: variables `x1`..`xN`, integer and rational
//! literals, `+ - * / ^` and parentheses. Whitespace is ignored and implicit
//! multiplication by juxtaposition is rejected. Division is only allowed by a
//! nonzero constant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Num(v)));
                continue;
            }
            b'x' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(PolyError::Parse { pos: start, msg: "expected variable index after 'x'".into() });
                }
                let idx: usize = src[ds..i]
                    .parse()
                    .map_err(|_| PolyError::Parse { pos: ds, msg: "variable index too large".into() })?;
                if idx == 0 {
                    return Err(PolyError::Parse { pos: ds, msg: "variables are numbered from x1".into() });
                }
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            _ => {
                return Err(PolyError::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", src[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    nvars: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if d.degree().unwrap_or(0) > 0 {
                        return Err(PolyError::Parse { pos: at, msg: "division by a non-constant".into() });
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(PolyError::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    return self.err("juxtaposition is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| PolyError::Parse {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, Rational::from_integer(v)))
            }
            Some(Tok::Var(i)) => {
                if i >= self.nvars {
                    return self.err(format!("variable x{} exceeds dimension {}", i + 1, self.nvars));
                }
                self.pos += 1;
                Ok(Polynomial::var(self.nvars, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in `nvars` variables.
pub fn parse_polynomial(src: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, nvars, end: src.len() };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

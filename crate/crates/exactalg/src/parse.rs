use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("empty input")]
    Empty,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
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

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }
}

struct Builder<'v> {
    fixed: Option<&'v [String]>,
    names: Vec<String>,
}

impl Builder<'_> {
    fn index(&mut self, pos: usize, name: &str) -> Result<usize, ParseError> {
        if let Some(f) = self.fixed {
            return f
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| ParseError::UnknownVariable { pos, name: name.to_string() });
        }
        if let Some(i) = self.names.iter().position(|v| v == name) {
            return Ok(i);
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }
}

/// Parses `text` into a polynomial. Without an explicit variable list the
/// variables are ordered by first appearance; the list used is returned.
pub fn parse_polynomial(text: &str, variables: Option<&[String]>) -> Result<(Poly, Vec<String>), ParseError> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut b = Builder { fixed: variables, names: Vec::new() };
    if lx.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut raw: Vec<(Vec<(usize, u32)>, Rational)> = Vec::new();
    let mut sign = Rational::one();
    if lx.eat(b'-') {
        sign = -sign;
    } else {
        lx.eat(b'+');
    }
    loop {
        let (mono, c) = parse_term(&mut lx, &mut b)?;
        raw.push((mono, sign * c));
        if lx.eat(b'+') {
            sign = Rational::one();
        } else if lx.eat(b'-') {
            sign = -Rational::one();
        } else if lx.peek().is_none() {
            break;
        } else {
            return Err(lx.err("expected `+`, `-` or end of input"));
        }
    }
    let names = match variables {
        Some(v) => v.to_vec(),
        None => b.names,
    };
    let n = names.len();
    let mut p = Poly::zero(n);
    for (fs, c) in raw {
        let mut e = vec![0u32; n];
        for (i, k) in fs {
            e[i] += k;
        }
        p.add_term(Monomial(e), c);
    }
    Ok((p, names))
}

fn parse_term(lx: &mut Lexer, b: &mut Builder) -> Result<(Vec<(usize, u32)>, Rational), ParseError> {
    let mut coeff = Rational::one();
    let mut factors = Vec::new();
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = lx.uint().ok_or_else(|| lx.err("bad integer"))?;
            let mut c = Rational::from_integer(num);
            if lx.eat(b'/') {
                let den = lx.uint().ok_or_else(|| lx.err("expected denominator"))?;
                if den.is_zero() {
                    return Err(lx.err("zero denominator"));
                }
                c /= Rational::from_integer(den);
            }
            coeff = c;
        }
        Some(c) if c.is_ascii_alphabetic() => factors.push(parse_factor(lx, b)?),
        _ => return Err(lx.err("expected a coefficient or variable")),
    }
    while lx.eat(b'*') {
        factors.push(parse_factor(lx, b)?);
    }
    Ok((factors, coeff))
}

fn parse_factor(lx: &mut Lexer, b: &mut Builder) -> Result<(usize, u32), ParseError> {
    let (pos, name) = lx.ident().ok_or_else(|| lx.err("expected a variable"))?;
    let i = b.index(pos, &name)?;
    if !lx.eat(b'^') {
        return Ok((i, 1));
    }
    if lx.peek() == Some(b'-') {
        return Err(ParseError::NegativeExponent { pos: lx.pos });
    }
    let e = lx.uint().ok_or_else(|| lx.err("expected exponent"))?;
    let e: u32 = e.try_into().map_err(|_| lx.err("exponent too large"))?;
    Ok((i, e))
}

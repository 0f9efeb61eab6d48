//! Human-readable polynomial text: `x^8 + 13*x^4 + 331`.
//!
//! The grammar accepted by [`parse_polynomial`] is a signed sum of terms,
//! each `c`, `x`, `x^e`, `c*x` or `c*x^e`, with arbitrary whitespace.
//! Repeated exponents are summed and coefficients are reduced mod `q`.

use std::fmt::Write;

use thiserror::Error;

use crate::field::{FieldCtx, Fq};

use super::Polynomial;

/// Largest exponent the parser accepts.
pub const MAX_PARSE_DEGREE: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffStyle {
    /// Residues in `[0, q)`.
    #[default]
    Canonical,
    /// Residues in `(-q/2, q/2]`, printed with a minus sign when negative.
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {ch:?} at byte {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("number at byte {pos} does not fit in 64 bits")]
    NumberTooLarge { pos: usize },
    #[error("exponent at byte {pos} exceeds {limit}")]
    ExponentTooLarge { pos: usize, limit: u64 },
}

/// Renders `f` with terms in descending degree.
pub fn format_polynomial(f: &Polynomial, ctx: &FieldCtx, style: CoeffStyle) -> String {
    let mut out = String::new();
    for i in (0..f.coeffs().len()).rev() {
        let c = f.coeffs()[i];
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = match style {
            CoeffStyle::Canonical => (false, c.value()),
            CoeffStyle::Balanced => {
                let b = ctx.balanced(c);
                (b < 0, b.unsigned_abs())
            }
        };
        match (out.is_empty(), negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        if i == 0 {
            write!(out, "{mag}").unwrap();
            continue;
        }
        if mag != 1 {
            write!(out, "{mag}*").unwrap();
        }
        out.push('x');
        if i > 1 {
            write!(out, "^{i}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        // the cursor only ever steps over ASCII, so it sits on a char boundary
        match String::from_utf8_lossy(&self.s[self.pos..]).chars().next() {
            Some(ch) => ParseError::UnexpectedChar { pos: self.pos, ch },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.s.get(self.pos).filter(|b| b.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError::NumberTooLarge { pos: start })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected());
        }
        Ok(v)
    }

    /// After an `x`: optional `^e`.
    fn exponent(&mut self) -> Result<u64, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let e = self.number()?;
        if e > MAX_PARSE_DEGREE {
            return Err(ParseError::ExponentTooLarge { pos: at, limit: MAX_PARSE_DEGREE });
        }
        Ok(e)
    }
}

/// Parses the text form back into a polynomial over `F_q`.
pub fn parse_polynomial(text: &str, ctx: &FieldCtx) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut terms: Vec<(u64, Fq)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some(b'+') if !first => cur.pos += 1,
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            None => return Err(ParseError::UnexpectedEnd),
            _ if !first => return Err(cur.unexpected()),
            _ => {}
        }
        first = false;
        let (coeff, exp) = match cur.peek() {
            Some(b'x') => {
                cur.pos += 1;
                (1, cur.exponent()?)
            }
            Some(b) if b.is_ascii_digit() => {
                let c = cur.number()?;
                if cur.peek() == Some(b'*') {
                    cur.pos += 1;
                    if cur.peek() != Some(b'x') {
                        return Err(cur.unexpected());
                    }
                    cur.pos += 1;
                    (c, cur.exponent()?)
                } else {
                    (c, 0)
                }
            }
            None => return Err(ParseError::UnexpectedEnd),
            Some(_) => return Err(cur.unexpected()),
        };
        let mut c = ctx.elem(coeff);
        if negative {
            c = ctx.neg(c);
        }
        terms.push((exp, c));
        if cur.peek().is_none() {
            break;
        }
    }
    let degree = terms.iter().map(|&(e, _)| e).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Fq::ZERO; degree + 1];
    for (e, c) in terms {
        coeffs[e as usize] = ctx.add(coeffs[e as usize], c);
    }
    Ok(Polynomial::from_fq(coeffs))
}

//! Compact form strings such as `567-512-534` or `3/2*123-42`.
//!
//! ```text
//! form  := ['-'] term (('+' | '-') term)*
//! term  := [coeff '*'] ['e'] digit+
//! coeff := integer ['/' integer]
//! ```
//!
//! Each digit `1..=9` names a generator; the digits of a term are wedged left
//! to right. The string `0` denotes the zero form. Blanks are ignored.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Form;
use crate::scalar::{GaussRat, Poly};
use crate::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_blanks(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_blanks();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        self.skip_blanks();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits")
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, reason: reason.into() }
    }
}

/// Parses a form string over generators `e1..e{dimension}`.
pub fn parse_form(dimension: usize, text: &str) -> Result<Form> {
    if text.trim() == "0" {
        return Ok(Form::zero());
    }
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut out = Form::zero();
    let mut negative = false;
    match cur.peek() {
        None => return Err(cur.error("empty form")),
        Some(b'-') => {
            negative = true;
            cur.pos += 1;
        }
        _ => {}
    }
    loop {
        let term = parse_term(&mut cur, dimension)?;
        if negative {
            out -= &term;
        } else {
            out += &term;
        }
        match cur.peek() {
            None => return Ok(out),
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(c) => return Err(cur.error(alloc::format!("unexpected character '{}'", c as char))),
        }
        cur.pos += 1;
    }
}

fn parse_term(cur: &mut Cursor<'_>, dimension: usize) -> Result<Form> {
    let mut coeff = GaussRat::one();
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let start = cur.pos;
        let lead = cur.digits().to_string();
        match cur.peek() {
            Some(b'/') | Some(b'*') => {
                let numer: BigInt = lead.parse().map_err(|_| cur.error("bad integer"))?;
                let mut value = BigRational::from_integer(numer);
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let den = cur.digits();
                    if den.is_empty() {
                        return Err(cur.error("expected denominator"));
                    }
                    let den: BigInt = den.parse().map_err(|_| cur.error("bad integer"))?;
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                if cur.peek() != Some(b'*') {
                    return Err(cur.error("expected '*' after coefficient"));
                }
                cur.pos += 1;
                coeff = GaussRat::from_rational(value);
            }
            _ => {
                cur.pos = start;
            }
        }
    }
    if cur.peek() == Some(b'e') {
        cur.pos += 1;
    }
    let start = cur.pos;
    let digits = cur.digits();
    if digits.is_empty() {
        return Err(cur.error("expected generator digits"));
    }
    let mut indices = Vec::with_capacity(digits.len());
    for (k, d) in digits.bytes().enumerate() {
        let index = (d - b'0') as usize;
        if index == 0 {
            return Err(Error::Parse { position: start + k, reason: "generator digit 0".into() });
        }
        if index > dimension {
            return Err(Error::Index { index, dimension });
        }
        indices.push(index);
    }
    Ok(Form::wedge_of(&indices, Poly::constant(coeff)))
}

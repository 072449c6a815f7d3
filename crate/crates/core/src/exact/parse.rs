//! Scalar literal grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := rational | rational '*' 'sqrt(' rational ')'
//! rational := int ['/' posint]
//! ```
//!
//! Whitespace is allowed between tokens. The printed form of a scalar uses the
//! same grammar, so printing then parsing is the identity on coefficients.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Basis, ExactError, ExactScalar, Rational};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &'static str) -> ExactError {
        ExactError::Syntax { input: self.src.to_string(), pos: self.pos, expected }
    }

    fn expect(&mut self, token: &str, expected: &'static str) -> Result<(), ExactError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn rational(&mut self, allow_sign: bool) -> Result<Rational, ExactError> {
        self.skip_ws();
        let negative = allow_sign && self.eat("-");
        if allow_sign && !negative {
            self.eat("+");
        }
        self.skip_ws();
        let num: BigInt = self.digits().ok_or_else(|| self.error("integer"))?.parse().expect("digits");
        let den: BigInt = if self.eat("/") {
            self.skip_ws();
            self.digits().ok_or_else(|| self.error("positive integer denominator"))?.parse().expect("digits")
        } else {
            BigInt::from(1)
        };
        let q = Rational::from_bigints(num, den)?;
        Ok(if negative { q.neg() } else { q })
    }
}

/// Parses a scalar literal against `basis`.
pub fn parse_scalar(text: &str, basis: &Arc<Basis>) -> Result<ExactScalar, ExactError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut coeffs = vec![Rational::zero(); basis.len() + 1];
    let mut negate = false;
    loop {
        let mut c = cur.rational(true)?;
        if negate {
            c = c.neg();
        }
        let slot = if cur.eat("*") {
            cur.expect("sqrt", "'sqrt'")?;
            cur.expect("(", "'('")?;
            let radicand = cur.rational(false)?;
            cur.expect(")", "')'")?;
            if radicand.signum() <= 0 {
                return Err(ExactError::InvalidBasis(format!("radicand {radicand} is not positive")));
            }
            if radicand.rational_sqrt().is_some() {
                return Err(ExactError::PerfectSquareRadicand(radicand.to_string()));
            }
            1 + basis
                .position(&radicand)
                .ok_or_else(|| ExactError::RadicandNotInBasis { radicand: radicand.to_string(), basis: basis.to_string() })?
        } else {
            0
        };
        coeffs[slot] = coeffs[slot].add(&c);
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return Err(cur.error("'+', '-' or end of input")),
        }
        cur.pos += 1;
    }
    ExactScalar::new(basis.clone(), coeffs)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        if !coeffs[0].is_zero() || self.is_zero() {
            write!(f, "{}", coeffs[0])?;
            first = false;
        }
        for (c, e) in coeffs[1..].iter().zip(self.basis().elements()) {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}*sqrt({})", e.radicand())?;
                first = false;
            } else if c.signum() < 0 {
                write!(f, " - {}*sqrt({})", c.abs(), e.radicand())?;
            } else {
                write!(f, " + {c}*sqrt({})", e.radicand())?;
            }
        }
        Ok(())
    }
}

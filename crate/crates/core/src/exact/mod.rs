//! Exact arithmetic over `Q(1, sqrt(r_1), .., sqrt(r_m))` viewed as a rational
//! vector space, with certified sign determination.

mod basis;
mod parse;
mod rational;
mod scalar;

pub use basis::{Basis, BasisElement};
pub use parse::parse_scalar;
pub use rational::Rational;
pub use scalar::{Decimal, ExactScalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("syntax error in {input:?} at byte {pos}: expected {expected}")]
    Syntax { input: String, pos: usize, expected: &'static str },
    #[error("radicand {radicand} is not in basis {basis}")]
    RadicandNotInBasis { radicand: String, basis: String },
    #[error("radicand {0} is a rational square; write its root into the constant term")]
    PerfectSquareRadicand(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("scalars over different bases: {left} vs {right}")]
    BasisMismatch { left: String, right: String },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("sign of {value} unresolved at {max_bits} bits (basis independence violated?)")]
    PrecisionExhausted { max_bits: u32, value: String },
    #[error("at most 1000 decimal digits supported, asked for {0}")]
    TooManyDigits(u32),
    #[error("invalid precision context: start {start} bits exceeds max {max} bits")]
    InvalidPrecision { start: u32, max: u32 },
}

/// Precision schedule for certified sign determination: start at
/// `start_bits`, double on every unresolved enclosure, give up past `max_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl PrecisionContext {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self, ExactError> {
        if start_bits == 0 || start_bits > max_bits {
            return Err(ExactError::InvalidPrecision { start: start_bits, max: max_bits });
        }
        Ok(PrecisionContext { start_bits, max_bits })
    }

    pub fn with_max_bits(max_bits: u32) -> Result<Self, ExactError> {
        Self::new(Self::default().start_bits.min(max_bits), max_bits)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { start_bits: 128, max_bits: 16384 }
    }
}

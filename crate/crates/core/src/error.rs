use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    /// An input violates a structural invariant (lengths, permutation, spec file).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A point lies outside the domain of the requested map.
    #[error("domain error: {0}")]
    Domain(String),
    /// The hypotheses a computation relies on do not hold for this input.
    #[error("hypotheses not met: {0}")]
    Hypothesis(String),
    #[error("budget of {limit} {unit} exhausted during {context}")]
    Budget { limit: u64, unit: &'static str, context: String },
}

impl Error {
    /// True for resource exhaustion (step budget, cell cap, precision cap).
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Exact(ExactError::PrecisionExhausted { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::lemma::LemmaViolation;
use crate::polygon::PolygonRecord;

/// Errors raised by the library.
///
/// Variants map one-to-one onto the CLI exit codes: usage (2), domain (3),
/// construction (4) and certification failures (5).
#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed parameters that make no sense for the operation
    /// (even `n` where odd is required, zero trials, ...).
    #[error("{0}")]
    Usage(String),

    /// Inputs outside the domain of a geometric operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An extremal construction could not keep its polygon simple or contained.
    #[error("construction error: {0}")]
    Construction(String),

    /// No candidate move satisfied the chain-lengthening conclusion.
    #[error("lemma violation: {}", .0.reason)]
    LemmaViolation(Box<LemmaViolation>),

    /// A search produced a polygon whose perimeter beats the theoretical bound.
    #[error("counterexample found: perimeter {perimeter} exceeds bound {bound}")]
    CounterexampleFound {
        polygon: Box<PolygonRecord>,
        perimeter: f64,
        bound: f64,
    },

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

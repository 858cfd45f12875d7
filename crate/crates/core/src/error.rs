use thiserror::Error;

use crate::rational::Rational;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map has no breakpoints")]
    EmptyMap,
    #[error("map must start at x = 0 and end at x = 1")]
    NotAnchored,
    #[error("breakpoint x-coordinates must be strictly increasing")]
    NotSorted,
    #[error("breakpoint value {0} is outside [0, 1]")]
    OutOfRange(Rational),
    #[error("argument {0} is outside [0, 1]")]
    DomainError(Rational),
    #[error("interval [{}, {}] is invalid", .0.0, .0.1)]
    InvalidInterval(Box<(Rational, Rational)>),
    #[error("breakpoint budget of {cap} exceeded")]
    BudgetExceeded { cap: usize },
    #[error("{0} is not an isolated fixed point")]
    NotIsolatedFixedPoint(Rational),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("no periodic point qualifies for r")]
    RUndefined,
    #[error("the given cycles do not violate nesting")]
    NotAViolation,
    #[error("replay failed at step {step}: {condition}")]
    ReplayFailure { step: usize, condition: String },
    #[error("sequence is not an orbit: f(p[{0}]) != p[{1}]", .index + 1, .index)]
    NotAnOrbit { index: usize },
    #[error("orbit point is not interior to the interval")]
    PNotInterior,
    #[error("map is not unimodal")]
    NotUnimodal,
    #[error("no fixed structure determines the endpoints")]
    NoFixedStructure,
    #[error("bad projection axes")]
    BadAxes,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("certificate transfer failed: {0}")]
    TransferFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

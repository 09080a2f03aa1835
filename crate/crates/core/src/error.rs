use std::fmt;

use thiserror::Error;

/// Syntax error with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(String, String),
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("pole at t = {0}")]
    Pole(String),
    #[error("not a perfect {0}th power")]
    NotPerfectPower(usize),
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point is not {0}-periodic")]
    NotPeriodic(usize),
    #[error("repeated point in Mobius triple")]
    RepeatedPoint,
    #[error("parameter {0} is excluded for {1}")]
    ExcludedParameter(String, String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("curve has constant defining polynomial in x")]
    ConstantCurve,
    #[error("zero input")]
    ZeroInput,
    #[error("lambda_{0} vanishes")]
    VanishingLambda(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Other(String),
}

impl Error {
    /// Short machine-readable tag used by `--json-errors`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "syntax",
            Error::InexactDivision(_) => "inexact-division",
            Error::DivisionByZero => "division-by-zero",
            Error::FieldMismatch(..) => "field-mismatch",
            Error::BadPrime(..) => "bad-prime",
            Error::Pole(_) => "pole",
            Error::NotPerfectPower(_) => "not-a-perfect-power",
            Error::DegenerateMap(_) => "degenerate-map",
            Error::Precondition(_) => "precondition-violated",
            Error::NotPeriodic(_) => "not-periodic",
            Error::RepeatedPoint => "repeated-point",
            Error::ExcludedParameter(..) => "excluded-parameter",
            Error::Verification(_) => "verification-failed",
            Error::Budget(_) => "budget-exhausted",
            Error::ConstantCurve => "constant-curve",
            Error::ZeroInput => "zero-input",
            Error::VanishingLambda(_) => "vanishing-lambda",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Other(_) => "other",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

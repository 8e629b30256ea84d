use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants tagged as defects indicate that an identity which must hold
/// was observed to fail; they are never expected in normal operation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {degree} exceeds declared center {center}")]
    DegreeExceedsCenter { degree: usize, center: usize },

    #[error("polynomial is not symmetric about center {center} (index {index})")]
    NotSymmetric { center: usize, index: usize },

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` has no assignment")]
    UnassignedVariable(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("monomial pattern violation in row {row}: {detail}")]
    PatternViolation { row: usize, detail: String },

    #[error("routes {left} and {right} disagree at J_{n}, x^{exponent}: {left_value} vs {right_value}")]
    RouteMismatch {
        n: usize,
        exponent: usize,
        left: String,
        right: String,
        left_value: String,
        right_value: String,
    },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("defect: {0}")]
    Defect(String),

    #[error("corrupted cache: {0}")]
    CorruptedCache(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

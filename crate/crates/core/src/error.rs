use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported extension degree {0} (expected 2..=16)")]
    UnsupportedDegree(usize),

    #[error("modulus {modulus:#x} is not a primitive polynomial of degree {n}")]
    NotPrimitive { n: usize, modulus: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("fast algebraic immunity is undefined for the zero function")]
    UndefinedFai,

    #[error("constant function rejected: {0}")]
    Constant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search space too large: {0}")]
    SearchSpace(String),

    #[error("function is not perfect algebraic immune (FAI = {fai}, n = {n})")]
    NotPai { fai: usize, n: usize },

    #[error("singular matrix: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;

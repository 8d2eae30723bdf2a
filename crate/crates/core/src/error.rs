use thiserror::Error;

/// Errors raised by the constructions and verifiers in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NawError {
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not central: {0}")]
    NotCentral(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exponent overflow in Laurent arithmetic")]
    Overflow,

    #[error("substitution target is not a unit monomial for a variable with negative exponent")]
    NonUnitSubstitution,

    #[error("mismatched {0}")]
    Mismatch(String),

    #[error("divisibility violated: {0}")]
    Divisibility(String),

    #[error("not amalgamable: {0}")]
    NotAmalgamable(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, NawError>;

impl From<std::io::Error> for NawError {
    fn from(e: std::io::Error) -> Self {
        NawError::Io(e.to_string())
    }
}

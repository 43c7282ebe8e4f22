use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 2^31)")]
    NotPrime(u64),
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("undeclared variable `{name}` at byte {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error("malformed input at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("basis was not computed under the required elimination order")]
    OrderMismatch,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("quotient does not have finite length")]
    NotFiniteLength,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("colon by the zero ideal")]
    ZeroIdeal,
    #[error("ideal is contained in the relation ideal")]
    IdealInRelations,
    #[error("saturation did not stabilize within {0} steps")]
    IterationCap(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("trick element rejected: {0}")]
    TrickElement(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not antisymmetric at ({row},{col})")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("all input polynomials are zero")]
    AllZeroInput,

    #[error("the polynomials do not generate the unit ideal")]
    NotUnitIdeal,

    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),

    #[error("not a Bezout solution: {0}")]
    NotASolution(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {r} out of range for a {rows}x{cols} matrix")]
    MinorOutOfRange { r: usize, rows: usize, cols: usize },
    #[error("polynomial is not in the ideal (remainder {remainder})")]
    NotInIdeal { remainder: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("rings do not match: {0}")]
    RingMismatch(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

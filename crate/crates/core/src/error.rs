use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{value} cannot be reduced mod {p}: denominator divisible by p")]
    NotReducible { value: String, p: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("inadmissible element: {0}")]
    Inadmissible(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("twists do not commute")]
    NonCommuting,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

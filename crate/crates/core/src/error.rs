use thiserror::Error;

use crate::distance::DistanceError;
use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error("codes or vectors are over different fields")]
    FieldMismatch,
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {pos} out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("symbol {value} out of range for field of order {q}")]
    SymbolOutOfRange { value: u32, q: u32 },
    #[error("scalar at position {0} is zero")]
    ZeroScalar(usize),
    #[error("generator polynomial does not divide x^{0} - 1")]
    NotCyclic(usize),
    #[error("{0}")]
    Dimension(String),
    #[error("code is not contained in the given supercode")]
    NotSubcode,
}

use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is {nrows}x{ncols}, expected square")]
    NonSquare { nrows: usize, ncols: usize },
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("keller-violation: det = {det:?}")]
    KellerViolation { det: Polynomial },
    #[error("map has only constant components")]
    ConstantMap,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

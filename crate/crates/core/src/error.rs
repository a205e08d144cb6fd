use thiserror::Error;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("complex is not acyclic ({0})")]
    NotAcyclic(&'static str),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("map is not an involution in degree {0}")]
    NotInvolution(usize),
    #[error("maps do not commute with the differentials in degree {0}")]
    NotChainMap(usize),
    #[error("complex too short: {0}")]
    TooShort(&'static str),
    #[error("invalid binary ladder: {0}")]
    InvalidLadder(&'static str),
    #[error("invalid short exact sequence: {0}")]
    InvalidSes(&'static str),
    #[error("invalid Nenashev diagram: {0}")]
    InvalidDiagram(&'static str),
    #[error("d∘d ≠ 0 in degree {0}")]
    NotComplex(usize),
}

pub type Result<T> = core::result::Result<T, Error>;

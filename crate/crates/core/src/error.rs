use thiserror::Error;

/// Errors raised by the checkers and constructors in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M†| entry {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not an orthogonal projection (defect {defect:e})")]
    NotProjection { defect: f64 },

    #[error("operator is not unitary (max |U†U - I| entry {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("effects do not form a POVM (defect {defect:e})")]
    NotPovm { defect: f64 },

    #[error("state vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("state is not a superposition of common eigenstates with common eigenvalues (residual {residual:e})")]
    NotDecomposable { residual: f64 },

    #[error("not an orthonormal eigenbasis: {0}")]
    NotEigenbasis(String),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("ambiguous value matching: {value} is within tolerance of {candidates:?}")]
    AmbiguousMatch { value: f64, candidates: Vec<f64> },

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    DivisionByZero,

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("vector {index} has length {found}, frame dimension is {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid shape: {0}")]
    InvalidShape(&'static str),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e}, allowed {allowed:e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    Indefinite { min_eigenvalue: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e}, threshold {threshold:e})")]
    NotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },

    #[error("complex spectrum does not pair up at position {index} (gap {gap:e})")]
    PairingFailed { index: usize, gap: f64 },

    #[error("system is inconsistent: right-hand side is off the range by {residual:e} (relative)")]
    Inconsistent { residual: f64 },

    #[error("columns are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("operator is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("family is rank-deficient (smallest frame-operator eigenvalue {lambda_min:e}, threshold {threshold:e})")]
    RankDeficient { lambda_min: f64, threshold: f64 },

    #[error("coefficients do not represent the vector (relative residual {residual:e})")]
    NotARepresentation { residual: f64 },

    #[error("index counts differ: {left} vs {right}")]
    IndexCountMismatch { left: usize, right: usize },
}

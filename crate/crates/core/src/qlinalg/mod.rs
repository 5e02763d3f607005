//! Dense linear algebra over ℍ with right-module semantics.

pub mod complex;
mod matrix;
mod spectral;
mod vector;

pub use complex::CMatrix;
pub use matrix::{embed_vector, unembed_vector, QMatrix};
pub use spectral::{
    herm_eig, is_bounded_below, is_surjective, kernel_basis, operator_norm, orthogonal_projector,
    orthonormality_deviation, pinv, rank, solve_min_norm, sqrt_psd, svd, HermEig, QSvd,
    CONSISTENCY_TOL, DEFAULT_RANK_EPS, HERMITIAN_TOL, ORTHONORMAL_TOL, PAIR_TOL,
};
pub use vector::QVector;

//! Finite-dimensional frame theory over the quaternions.
//!
//! Vectors live in a right ℍ-module: scalars multiply on the right, and
//! matrices act on column vectors from the left, which is what makes them
//! right ℍ-linear. Spectral work (eigendecomposition, SVD, pseudo-inverse)
//! goes through the complex-adjoint embedding and a pair of complex Jacobi
//! kernels.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod frame_ops;
pub mod frames;
mod math;
pub mod qlinalg;
pub mod quaternion;
pub mod random;

pub use error::{Error, Result};
pub use frame_ops::{
    are_equivalent, bessel_from_operator, frame_with_frame_operator, intertwiner, map_frame,
    project_frame, unitary_invariance_check, EquivalenceResult, Intertwining, MapReport,
    MappedFrame, ProjectedFrame, Relation, UnitaryInvariance,
};
pub use frames::{
    BoundFormulas, Frame, FrameBounds, FrameReport, FrameStatus, NaturalRepresentation,
    PythagorasCheck,
};
pub use qlinalg::{
    herm_eig, is_bounded_below, is_surjective, kernel_basis, operator_norm, orthogonal_projector,
    pinv, solve_min_norm, sqrt_psd, svd, CMatrix, HermEig, QMatrix, QSvd, QVector,
};
pub use quaternion::Quaternion;

//! Seeded random generation of quaternionic test data.
//!
//! Every quaternion entry has four independent standard normal components.
//! All functions take the generator explicitly, so a fixed seed fixes the
//! output.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::frames::Frame;
use crate::qlinalg::{herm_eig, QMatrix, QVector};
use crate::quaternion::Quaternion;

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = quaternion(rng);
        let m = q.modulus();
        if m > 1e-8 {
            return q / m;
        }
    }
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QVector {
    (0..n).map(|_| quaternion(rng)).collect()
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QVector {
    loop {
        let v = vector(rng, n);
        let norm = v.norm();
        if norm > 1e-8 {
            return v.scale(1.0 / norm);
        }
    }
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| quaternion(rng))
}

/// `X·Y` with `X` of shape `rows × rank` and `Y` of shape `rank × cols`;
/// generically of exactly the requested rank.
pub fn matrix_of_rank<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    rank: usize,
) -> QMatrix {
    let x = matrix(rng, rows, rank);
    let y = matrix(rng, rank, cols);
    x.matmul(&y).expect("inner dimensions agree")
}

/// `(X + X*)/2` for a random square `X`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    matrix(rng, n, n).hermitian_part()
}

/// Random unitary: the eigenvector matrix of a random Hermitian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        if let Ok(e) = herm_eig(&hermitian(rng, n)) {
            return e.eigenvectors;
        }
    }
}

/// First `d` columns of a random `n × n` unitary.
pub fn orthonormal_columns<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> QMatrix {
    unitary(rng, n).column_range(0..d)
}

/// `U·diag(λ)·U*` with a spectrum in which values are deliberately repeated.
pub fn hermitian_with_repeated_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    let distinct = 1 + rng.random_range(0..n.div_ceil(2).max(1));
    let levels: Vec<f64> = (0..distinct).map(|_| 3.0 * normal(rng)).collect();
    let spectrum: Vec<f64> = (0..n)
        .map(|_| levels[rng.random_range(0..distinct)])
        .collect();
    let u = unitary(rng, n);
    let d = QMatrix::from_real_diag(&spectrum);
    u.matmul(&d)
        .and_then(|ud| ud.matmul(&u.adjoint()))
        .expect("square shapes")
        .hermitian_part()
}

/// `X·X* + shift·I`, Hermitian positive definite for `shift > 0`.
pub fn positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize, shift: f64) -> QMatrix {
    let x = matrix(rng, n, n);
    let mut m = x
        .matmul(&x.adjoint())
        .expect("square shapes")
        .hermitian_part();
    for i in 0..n {
        m[(i, i)] += Quaternion::real(shift);
    }
    m
}

/// `m` random vectors of `ℍⁿ`; a frame with probability one when `m ≥ n`.
pub fn frame<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Frame {
    Frame::new(n, (0..m).map(|_| vector(rng, n)).collect()).expect("vectors have length n")
}

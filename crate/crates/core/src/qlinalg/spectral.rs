//! Quaternionic spectral factorizations recovered from the complex-adjoint
//! representation.
//!
//! The `2n` eigenvalues (or singular values) of `χ(M)` come in equal pairs.
//! After pairing, each cluster of equal values spans a complex subspace that
//! is closed under right multiplication by `j`; quaternionic vectors are
//! extracted from it by pivoted quaternionic Gram–Schmidt.

use alloc::vec::Vec;

use super::complex::{self, CMatrix};
use super::matrix::{unembed_vector, QMatrix};
use super::vector::{check_len, QVector};
use crate::error::{Error, Result};
use crate::math;
use crate::quaternion::Quaternion;

/// Relative Hermiticity tolerance, entrywise against `‖M‖_F`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default relative factor of the rank threshold `max(m,n)·eps·σ_max`.
pub const DEFAULT_RANK_EPS: f64 = 1e-12;
/// Two values of a doubled spectrum pair when they differ by at most
/// `PAIR_TOL·(1 + |λ|)` (plus a tiny scale-relative term).
pub const PAIR_TOL: f64 = 1e-8;
/// Accepted deviation of `B*B` from the identity for orthonormal inputs.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Consistency tolerance of [`solve_min_norm`], relative to `‖v‖`.
pub const CONSISTENCY_TOL: f64 = 1e-8;

/// Hermitian eigendecomposition `M = U·diag(λ)·U*`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermEig {
    /// Real, descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `t` belongs to `eigenvalues[t]`.
    pub eigenvectors: QMatrix,
}

impl HermEig {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `U·diag(f(λ))·U*`, returned exactly Hermitian.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> QMatrix {
        let u = &self.eigenvectors;
        let n = self.dim();
        let scaled = QMatrix::from_fn(n, n, |i, t| u[(i, t)] * f(self.eigenvalues[t]));
        scaled.matmul_unchecked(&u.adjoint()).hermitian_part()
    }

    pub fn reconstruct(&self) -> QMatrix {
        self.map_spectrum(|x| x)
    }
}

/// Singular value decomposition `M = U·Σ·V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSvd {
    /// `m × m` unitary.
    pub u: QMatrix,
    /// `min(m, n)` values, non-negative, descending.
    pub singular_values: Vec<f64>,
    /// `n × n` unitary.
    pub v: QMatrix,
}

impl QSvd {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// `max(m, n)·eps·σ_max`.
    pub fn rank_threshold(&self, eps: f64) -> f64 {
        self.rows().max(self.cols()) as f64 * eps * self.sigma_max()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(DEFAULT_RANK_EPS)
    }

    pub fn rank_with(&self, eps: f64) -> usize {
        let thr = self.rank_threshold(eps);
        self.singular_values.iter().filter(|&&s| s > thr).count()
    }

    /// Smallest singular value above the rank threshold, i.e. the lower
    /// bound of `‖M u‖/‖u‖` on `ker(M)⊥`; zero for the zero matrix.
    pub fn sigma_min_nonzero(&self) -> f64 {
        let r = self.rank();
        if r == 0 {
            0.0
        } else {
            self.singular_values[r - 1]
        }
    }

    /// `U·Σ·V*`.
    pub fn reconstruct(&self) -> QMatrix {
        let (m, n) = (self.rows(), self.cols());
        let sigma = QMatrix::from_fn(m, n, |i, j| {
            if i == j {
                Quaternion::real(self.singular_values[i])
            } else {
                Quaternion::ZERO
            }
        });
        self.u
            .matmul_unchecked(&sigma)
            .matmul_unchecked(&self.v.adjoint())
    }

    pub fn pinv_with(&self, eps: f64) -> QMatrix {
        let (m, n) = (self.rows(), self.cols());
        let r = self.rank_with(eps);
        let v_scaled = QMatrix::from_fn(n, r, |i, t| {
            self.v[(i, t)] * (1.0 / self.singular_values[t])
        });
        let u_r = self.u.column_range(0..r);
        let out = v_scaled.matmul_unchecked(&u_r.adjoint());
        debug_assert_eq!(out.shape(), (n, m));
        out
    }

    /// Orthonormal basis of `ker(M)` as the trailing columns of `V`.
    pub fn kernel_with(&self, eps: f64) -> QMatrix {
        let n = self.cols();
        self.v.column_range(self.rank_with(eps)..n)
    }
}

/// Spectral scale used to relax pairing for large-norm inputs.
fn pair_tolerance(value: f64, scale: f64) -> f64 {
    PAIR_TOL * (1.0 + value.abs()) + 1e-12 * scale
}

/// Pairs a descending doubled spectrum. Returns the averaged values.
fn pair_spectrum(doubled: &[f64]) -> Result<Vec<f64>> {
    debug_assert!(doubled.len().is_multiple_of(2));
    let scale = doubled.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    doubled
        .chunks_exact(2)
        .enumerate()
        .map(|(t, pair)| {
            let gap = (pair[0] - pair[1]).abs();
            if gap > pair_tolerance(pair[0], scale) {
                Err(Error::PairingFailed { index: 2 * t, gap })
            } else {
                Ok(0.5 * (pair[0] + pair[1]))
            }
        })
        .collect()
}

/// Removes the components of `x` along the orthonormal family `basis`
/// (`x - Σ b⟨b, x⟩`), twice for numerical orthogonality.
fn project_out(x: &mut QVector, basis: &[QVector]) {
    for _ in 0..2 {
        for b in basis {
            let c = b.inner_unchecked(x);
            x.add_mul_right(b, -c);
        }
    }
}

/// Pivoted quaternionic Gram–Schmidt: appends to `basis` the `count`
/// candidates (after projection) with the largest residuals, normalised.
/// Returns how many were actually appended.
fn extend_orthonormal(basis: &mut Vec<QVector>, candidates: &[QVector], count: usize) -> usize {
    let mut pool: Vec<QVector> = candidates.to_vec();
    let mut added = 0;
    while added < count && !pool.is_empty() {
        for c in pool.iter_mut() {
            project_out(c, basis);
        }
        let (best, norm) = pool
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if norm <= 1e-8 {
            break;
        }
        let mut v = pool.swap_remove(best);
        v = v.scale(1.0 / norm);
        // A final pass against the current basis keeps the new vector
        // orthogonal to working precision.
        project_out(&mut v, basis);
        let nv = v.norm();
        basis.push(v.scale(1.0 / nv));
        added += 1;
    }
    added
}

/// Turns a doubled spectrum (descending) and its complex vectors into
/// paired values and orthonormal quaternionic vectors.
fn recover_quaternionic(doubled: &[f64], vectors: &CMatrix) -> Result<(Vec<f64>, Vec<QVector>)> {
    let values = pair_spectrum(doubled)?;
    let n = values.len();
    let scale = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut basis: Vec<QVector> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && (values[end - 1] - values[end]).abs() <= pair_tolerance(values[end - 1], scale)
        {
            end += 1;
        }
        let candidates: Vec<QVector> = (2 * start..2 * end)
            .map(|c| unembed_vector(&vectors.column(c)))
            .collect();
        let got = extend_orthonormal(&mut basis, &candidates, end - start);
        if got != end - start {
            return Err(Error::PairingFailed {
                index: 2 * (start + got),
                gap: 0.0,
            });
        }
        start = end;
    }
    Ok((values, basis))
}

/// Eigendecomposition of a quaternionic Hermitian matrix.
///
/// Inputs whose anti-Hermitian part exceeds `1e-10·‖M‖_F` in any entry are
/// rejected, never symmetrised.
pub fn herm_eig(m: &QMatrix) -> Result<HermEig> {
    m.check_hermitian(HERMITIAN_TOL)?;
    let n = m.rows();
    let (doubled, vectors) = complex::hermitian_eigen(&m.complex_adjoint());
    let (eigenvalues, columns) = recover_quaternionic(&doubled, &vectors)?;
    Ok(HermEig {
        eigenvalues,
        eigenvectors: QMatrix::from_columns(n, &columns)?,
    })
}

/// Hermitian positive semidefinite square root.
///
/// Eigenvalues down to `-1e-10·max|λ|` are clamped to zero; anything more
/// negative is rejected.
pub fn sqrt_psd(m: &QMatrix) -> Result<QMatrix> {
    let eig = herm_eig(m)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if eig.min() < -1e-10 * scale {
        return Err(Error::Indefinite {
            min_eigenvalue: eig.min(),
        });
    }
    Ok(eig.map_spectrum(|x| math::sqrt(x.max(0.0))))
}

/// Singular value decomposition through the one-sided Jacobi SVD of `χ(M)`.
pub fn svd(m: &QMatrix) -> Result<QSvd> {
    let (rows, cols) = m.shape();
    if rows < cols {
        let t = svd(&m.adjoint())?;
        return Ok(QSvd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        });
    }
    let csvd = complex::one_sided_svd(&m.complex_adjoint());
    let (singular_values, v_cols) = recover_quaternionic(&csvd.singular_values, &csvd.v)?;
    let v = QMatrix::from_columns(cols, &v_cols)?;

    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let thr = rows.max(cols) as f64 * DEFAULT_RANK_EPS * sigma_max;
    let mut u_cols: Vec<QVector> = Vec::with_capacity(rows);
    for (t, &s) in singular_values.iter().enumerate() {
        if s <= thr {
            break;
        }
        let mut x = m.matvec_unchecked(&v_cols[t]).scale(1.0 / s);
        project_out(&mut x, &u_cols);
        let nx = x.norm();
        u_cols.push(x.scale(1.0 / nx));
    }
    let standard: Vec<QVector> = (0..rows).map(|k| QVector::basis(rows, k)).collect();
    let missing = rows - u_cols.len();
    extend_orthonormal(&mut u_cols, &standard, missing);
    Ok(QSvd {
        u: QMatrix::from_columns(rows, &u_cols)?,
        singular_values,
        v,
    })
}

/// `sup ‖M u‖ / ‖u‖ = σ_max(M)`, read off the complex-adjoint singular values.
pub fn operator_norm(m: &QMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    complex::singular_values(&m.complex_adjoint())
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Moore–Penrose pseudo-inverse with the default rank threshold.
pub fn pinv(m: &QMatrix) -> Result<QMatrix> {
    Ok(svd(m)?.pinv_with(DEFAULT_RANK_EPS))
}

/// Minimal-norm solution `M†v` of a consistent system `M x = v`.
pub fn solve_min_norm(m: &QMatrix, v: &QVector) -> Result<QVector> {
    check_len("solve_min_norm", m.rows(), v.len())?;
    let x = pinv(m)?.matvec_unchecked(v);
    let residual = (&m.matvec_unchecked(&x) - v).norm();
    let vn = v.norm();
    if residual > CONSISTENCY_TOL * vn {
        return Err(Error::Inconsistent {
            residual: if vn > 0.0 { residual / vn } else { residual },
        });
    }
    Ok(x)
}

/// Orthonormal columns spanning `ker(M)`; `n × (n - rank)`.
pub fn kernel_basis(m: &QMatrix) -> Result<QMatrix> {
    Ok(svd(m)?.kernel_with(DEFAULT_RANK_EPS))
}

pub fn rank(m: &QMatrix) -> Result<usize> {
    Ok(svd(m)?.rank())
}

/// `rank(M) = rows`.
pub fn is_surjective(m: &QMatrix) -> Result<bool> {
    Ok(rank(m)? == m.rows())
}

/// `rank(M) = cols`, i.e. `σ_min(M) > 0` above the rank threshold.
pub fn is_bounded_below(m: &QMatrix) -> Result<bool> {
    Ok(rank(m)? == m.cols())
}

/// Largest entrywise deviation of `B*B` from the identity.
pub fn orthonormality_deviation(b: &QMatrix) -> f64 {
    b.adjoint()
        .matmul_unchecked(b)
        .max_abs_diff(&QMatrix::identity(b.cols()))
}

/// `P = B·B*` for a matrix `B` with orthonormal columns.
pub fn orthogonal_projector(b: &QMatrix) -> Result<QMatrix> {
    let deviation = orthonormality_deviation(b);
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(b.matmul_unchecked(&b.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn j() -> Quaternion {
        Quaternion::J
    }

    /// Power iteration on `M*M`, independent of the Jacobi kernels.
    fn power_norm(m: &QMatrix, rng: &mut ChaCha8Rng) -> f64 {
        let mtm = m.adjoint().matmul(m).unwrap();
        let mut x = random::vector(rng, m.cols());
        let mut lambda = 0.0;
        for _ in 0..5000 {
            let y = mtm.matvec(&x).unwrap();
            let ny = y.norm();
            if ny == 0.0 {
                return 0.0;
            }
            lambda = ny;
            x = y.scale(1.0 / ny);
        }
        lambda.sqrt()
    }

    #[test]
    fn eig_of_diagonal() {
        let e = herm_eig(&QMatrix::from_real_diag(&[2.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![2.0, 1.0]);
        let u = &e.eigenvectors;
        for t in 0..2 {
            // eigenvectors of a diagonal matrix are basis vectors up to a unit phase
            assert!((u[(t, t)].modulus() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_of_quaternionic_two_by_two() {
        // (M - I)² = I, so the spectrum is {2, 0}.
        let m =
            QMatrix::from_rows(&[vec![Quaternion::ONE, j()], vec![-j(), Quaternion::ONE]]).unwrap();
        let mut chi: Vec<f64> = complex::hermitian_eigen(&m.complex_adjoint()).0;
        chi.iter_mut().for_each(|x| *x = (*x * 1e12).round() / 1e12);
        assert_eq!(chi, vec![2.0, 2.0, 0.0, 0.0]);
        let e = herm_eig(&m).unwrap();
        assert!((e.eigenvalues[0] - 2.0).abs() < 1e-13);
        assert!(e.eigenvalues[1].abs() < 1e-13);
        assert!(e.reconstruct().max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn eig_of_zero() {
        let e = herm_eig(&QMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
        let gram = e.eigenvectors.adjoint().matmul(&e.eigenvectors).unwrap();
        assert!(gram.max_abs_diff(&QMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m =
            QMatrix::from_rows(&[vec![Quaternion::ONE, j()], vec![j(), Quaternion::ONE]]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            herm_eig(&QMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn eig_random_and_degenerate() {
        let mut r = rng(7);
        for n in 1..=8 {
            for degenerate in [false, true] {
                let m = if degenerate {
                    random::hermitian_with_repeated_spectrum(&mut r, n)
                } else {
                    random::hermitian(&mut r, n)
                };
                let e = herm_eig(&m).unwrap();
                let scale = operator_norm(&m).max(1e-300);
                assert!(e.reconstruct().max_abs_diff(&m) <= 1e-9 * scale);
                let gram = e.eigenvectors.adjoint().matmul(&e.eigenvectors).unwrap();
                assert!(gram.max_abs_diff(&QMatrix::identity(n)) <= 1e-10);
                assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
                // each eigenpair satisfies M u = u λ
                for t in 0..n {
                    let u = e.eigenvectors.column(t);
                    let lhs = m.matvec(&u).unwrap();
                    assert!(lhs.max_abs_diff(&u.scale(e.eigenvalues[t])) <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let s = sqrt_psd(&QMatrix::from_real_diag(&[4.0, 1.0])).unwrap();
        assert!(s.max_abs_diff(&QMatrix::from_real_diag(&[2.0, 1.0])) < 1e-14);
        let s = sqrt_psd(&QMatrix::identity(3)).unwrap();
        assert!(s.max_abs_diff(&QMatrix::identity(3)) < 1e-14);
        assert!(matches!(
            sqrt_psd(&QMatrix::from_real_diag(&[1.0, -1.0])),
            Err(Error::Indefinite { .. })
        ));
    }

    #[test]
    fn sqrt_random_psd() {
        let mut r = rng(8);
        for n in 1..=6 {
            let x = random::matrix(&mut r, n, n + 1);
            let m = x.matmul(&x.adjoint()).unwrap();
            let s = sqrt_psd(&m).unwrap();
            let norm = operator_norm(&m);
            assert!(s.matmul(&s).unwrap().max_abs_diff(&m) <= 1e-9 * norm);
            assert_eq!(s.hermitian_deviation(), 0.0);
            let comm = &s.matmul(&m).unwrap() - &m.matmul(&s).unwrap();
            assert!(comm.max_abs() <= 1e-9 * norm * norm);
            assert!(herm_eig(&s).unwrap().min() >= -1e-9 * norm);
        }
    }

    #[test]
    fn svd_examples() {
        let s = svd(&QMatrix::from_real_diag(&[3.0, 0.0])).unwrap();
        assert!((s.singular_values[0] - 3.0).abs() < 1e-14);
        assert!(s.singular_values[1].abs() < 1e-14);
        let mut r = rng(9);
        let u = random::unitary(&mut r, 4);
        for sigma in svd(&u).unwrap().singular_values {
            assert!((sigma - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_factorization_and_norm_oracle() {
        let mut r = rng(10);
        for (m, n) in [(1, 1), (2, 3), (3, 2), (4, 4), (5, 3), (3, 7), (8, 8)] {
            for rank in [0, 1, m.min(n)] {
                let a = random::matrix_of_rank(&mut r, m, n, rank);
                let s = svd(&a).unwrap();
                let scale = operator_norm(&a).max(1.0);
                assert!(s.reconstruct().max_abs_diff(&a) <= 1e-9 * scale);
                for f in [&s.u, &s.v] {
                    let gram = f.adjoint().matmul(f).unwrap();
                    assert!(gram.max_abs_diff(&QMatrix::identity(f.cols())) <= 1e-10);
                }
                assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
                assert!(s.singular_values.iter().all(|&x| x >= 0.0));
                assert_eq!(s.rank(), rank);
                // duplicated-then-deduplicated χ singular values
                let chi = complex::singular_values(&a.complex_adjoint());
                for (t, &sig) in s.singular_values.iter().enumerate() {
                    assert!((chi[2 * t] - sig).abs() <= 1e-9 * scale);
                    assert!((chi[2 * t + 1] - sig).abs() <= 1e-9 * scale);
                }
                let p = power_norm(&a, &mut r);
                assert!((s.sigma_max() - p).abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn operator_norm_properties() {
        assert!((operator_norm(&QMatrix::from_real_diag(&[2.0, 1.0])) - 2.0).abs() < 1e-14);
        assert!((operator_norm(&QMatrix::identity(3)) - 1.0).abs() < 1e-14);
        let mut r = rng(11);
        for _ in 0..100 {
            let a = random::matrix(&mut r, 3, 4);
            let b = random::matrix(&mut r, 4, 2);
            let c = random::matrix(&mut r, 3, 4);
            let slack = 1.0 + 1e-12;
            assert!(
                operator_norm(&a.matmul(&b).unwrap())
                    <= operator_norm(&a) * operator_norm(&b) * slack
            );
            assert!(operator_norm(&(&a + &c)) <= (operator_norm(&a) + operator_norm(&c)) * slack);
        }
    }

    fn penrose_residuals(m: &QMatrix, p: &QMatrix) -> [f64; 4] {
        let mp = m.matmul(p).unwrap();
        let pm = p.matmul(m).unwrap();
        [
            mp.matmul(m).unwrap().max_abs_diff(m),
            pm.matmul(p).unwrap().max_abs_diff(p),
            mp.hermitian_deviation(),
            pm.hermitian_deviation(),
        ]
    }

    #[test]
    fn pinv_examples() {
        let p = pinv(&QMatrix::from_real_diag(&[2.0, 0.0])).unwrap();
        assert!(p.max_abs_diff(&QMatrix::from_real_diag(&[0.5, 0.0])) < 1e-15);
        let mut r = rng(12);
        let u = random::unitary(&mut r, 5);
        let b = u.column_range(0..3);
        assert!(pinv(&b).unwrap().max_abs_diff(&b.adjoint()) < 1e-12);
    }

    #[test]
    fn pinv_penrose_all_ranks() {
        let mut r = rng(13);
        for (m, n) in [(3, 3), (4, 2), (2, 5), (6, 6)] {
            for rank in 0..=m.min(n) {
                let a = random::matrix_of_rank(&mut r, m, n, rank);
                let p = pinv(&a).unwrap();
                let norm_a = operator_norm(&a).max(1e-300);
                let norm_p = operator_norm(&p).max(1e-300);
                let [r1, r2, r3, r4] = penrose_residuals(&a, &p);
                assert!(r1 <= 1e-9 * norm_a, "{r1}");
                assert!(r2 <= 1e-9 * norm_p, "{r2}");
                assert!(r3 <= 1e-9 && r4 <= 1e-9, "{r3} {r4}");
                // ker(M†) = range(M)⊥
                let k = kernel_basis(&a.adjoint()).unwrap();
                if k.cols() > 0 {
                    assert!(p.matmul(&k).unwrap().max_abs() <= 1e-9 * norm_p);
                }
            }
        }
    }

    #[test]
    fn min_norm_examples() {
        let m = QMatrix::from_rows(&[vec![Quaternion::ONE, Quaternion::ONE]]).unwrap();
        let x = solve_min_norm(&m, &QVector::from_real(&[2.0])).unwrap();
        assert!(x.max_abs_diff(&QVector::from_real(&[1.0, 1.0])) < 1e-14);
        let mut r = rng(14);
        let v = random::vector(&mut r, 3);
        let x = solve_min_norm(&QMatrix::identity(3), &v).unwrap();
        assert!(x.max_abs_diff(&v) < 1e-14);
        let inconsistent = solve_min_norm(
            &QMatrix::from_real_diag(&[1.0, 0.0]),
            &QVector::from_real(&[0.0, 1.0]),
        );
        assert!(matches!(inconsistent, Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn min_norm_beats_every_kernel_shift() {
        let mut r = rng(15);
        let a = random::matrix_of_rank(&mut r, 3, 6, 3);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.cols(), 3);
        let x0 = random::vector(&mut r, 6);
        let v = a.matvec(&x0).unwrap();
        let x = solve_min_norm(&a, &v).unwrap();
        assert!((&a.matvec(&x).unwrap() - &v).norm() <= 1e-8 * v.norm());
        for _ in 0..100 {
            let coeffs = random::vector(&mut r, 3);
            let shift = k.matvec(&coeffs).unwrap();
            let y = &x + &shift;
            let pyth = x.norm_sqr() + shift.norm_sqr();
            assert!((y.norm_sqr() - pyth).abs() <= 1e-9 * pyth);
            assert!(x.norm() < y.norm());
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&QMatrix::identity(3)).unwrap().cols(), 0);
        let m = QMatrix::from_rows(&[vec![Quaternion::ONE, Quaternion::ONE]]).unwrap();
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.shape(), (2, 1));
        // (1, -1)/√2 up to a right unit scalar: entries have equal modulus and sum to zero
        assert!((k[(0, 0)].modulus() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((k[(0, 0)] + k[(1, 0)]).modulus() < 1e-14);
    }

    #[test]
    fn rank_nullity() {
        let mut r = rng(16);
        for _ in 0..50 {
            let rank = (r.next_u64() % 4) as usize;
            let a = random::matrix_of_rank(&mut r, 4, 5, rank);
            let k = kernel_basis(&a).unwrap();
            assert_eq!(k.cols() + svd(&a).unwrap().rank(), 5);
            assert!(a.matmul(&k).unwrap().max_abs() <= 1e-9 * operator_norm(&a).max(1.0));
        }
    }

    #[test]
    fn surjectivity_examples() {
        assert!(is_surjective(&QMatrix::identity(2)).unwrap());
        let fat = QMatrix::from_rows(&[
            vec![Quaternion::ONE, Quaternion::ZERO, Quaternion::ZERO],
            vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::ZERO],
        ])
        .unwrap();
        assert!(is_surjective(&fat).unwrap());
        assert!(!is_bounded_below(&fat).unwrap());
        let mut r = rng(17);
        for t in 0..100 {
            let (m, n) = (2 + t % 3, 2 + (t / 3) % 4);
            let rank = t % (m.min(n) + 1);
            let a = random::matrix_of_rank(&mut r, m, n, rank);
            assert_eq!(
                is_surjective(&a).unwrap(),
                is_bounded_below(&a.adjoint()).unwrap()
            );
            assert_eq!(is_surjective(&a).unwrap(), rank == m);
        }
    }

    #[test]
    fn projector_examples() {
        let e1 = QMatrix::from_columns(2, &[QVector::basis(2, 0)]).unwrap();
        assert_eq!(
            orthogonal_projector(&e1).unwrap(),
            QMatrix::from_real_diag(&[1.0, 0.0])
        );
        assert_eq!(
            orthogonal_projector(&QMatrix::identity(3)).unwrap(),
            QMatrix::identity(3)
        );
        let bad = QMatrix::from_columns(2, &[QVector::from_real(&[1.0, 1.0])]).unwrap();
        assert!(matches!(
            orthogonal_projector(&bad),
            Err(Error::NotOrthonormal { .. })
        ));
        let mut r = rng(18);
        for d in 1..=4 {
            let b = random::orthonormal_columns(&mut r, 5, d);
            let p = orthogonal_projector(&b).unwrap();
            assert!(p.matmul(&p).unwrap().max_abs_diff(&p) <= 1e-10);
            assert!(p.hermitian_deviation() <= 1e-12);
            assert!(p.matmul(&b).unwrap().max_abs_diff(&b) <= 1e-10);
        }
    }

    use rand::RngCore;
}

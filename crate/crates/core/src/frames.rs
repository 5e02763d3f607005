//! Finite frames of ℍⁿ: synthesis/analysis/frame operators, optimal bounds,
//! frame coefficients, canonical duals and Parseval normalization.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::math;
use crate::qlinalg::{herm_eig, operator_norm, pinv, HermEig, QMatrix, QVector};
/// A family is a frame when `λ_min(S) > n·FRAME_EPS·λ_max(S)`.
pub const FRAME_EPS: f64 = 1e-10;
/// `S` is symmetrised when its anti-Hermitian part is below this (relative).
pub const SYMMETRIZE_TOL: f64 = 1e-11;
/// `pythagoras_check` accepts `q` when `‖T q − u‖ ≤ REPRESENTATION_TOL·‖u‖`.
pub const REPRESENTATION_TOL: f64 = 1e-8;

/// An indexed finite family `{u₁, …, u_m}` in `ℍⁿ`.
///
/// Immutable; every derived operator is computed at most once.
pub struct Frame {
    dim: usize,
    vectors: Vec<QVector>,
    synthesis: OnceBox<QMatrix>,
    operator: OnceBox<QMatrix>,
    spectrum: OnceBox<Result<HermEig>>,
    inverse: OnceBox<QMatrix>,
}

/// Optimal frame bounds `A_opt ≤ B_opt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Each optimal bound computed three ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundFormulas {
    /// `λ_min(S)`
    pub lower_eig: f64,
    /// `1/‖S⁻¹‖`
    pub lower_inverse_norm: f64,
    /// `1/‖T†‖²`
    pub lower_pinv: f64,
    /// `λ_max(S)`
    pub upper_eig: f64,
    /// `‖S‖`
    pub upper_operator_norm: f64,
    /// `‖T‖²`
    pub upper_synthesis: f64,
}

impl BoundFormulas {
    /// Largest relative disagreement among the lower-bound formulas.
    pub fn lower_spread(&self) -> f64 {
        spread(&[self.lower_eig, self.lower_inverse_norm, self.lower_pinv])
    }

    pub fn upper_spread(&self) -> f64 {
        spread(&[
            self.upper_eig,
            self.upper_operator_norm,
            self.upper_synthesis,
        ])
    }
}

fn spread(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    (hi - lo) / hi.abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameStatus {
    Frame,
    RankDeficient,
}

impl FrameStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameStatus::Frame => "frame",
            FrameStatus::RankDeficient => "rank-deficient",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    pub status: FrameStatus,
    pub bounds: Option<FrameBounds>,
    pub formulas: Option<BoundFormulas>,
    /// Spectrum of `S`, descending.
    pub spectrum: Vec<f64>,
    pub threshold: f64,
    /// Named identity checks; all non-negative.
    pub residuals: Vec<(&'static str, f64)>,
}

/// Both expansions of a vector.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalRepresentation {
    /// `Σ uᵢ⟨uᵢ, S⁻¹u⟩`
    pub natural: QVector,
    /// `Σ S⁻¹uᵢ⟨uᵢ, u⟩`
    pub dual_side: QVector,
    /// `‖natural − dual_side‖`
    pub residual: f64,
}

/// `Σ|qᵢ|² = Σ|cᵢ|² + Σ|cᵢ − qᵢ|²`, sides and absolute residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PythagorasCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Frame {
    /// `dim ≥ 1`; every vector must have length `dim`. Zero vectors and
    /// families too small to span are accepted (and reported rank-deficient).
    pub fn new(dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidShape("frame dimension must be at least 1"));
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::VectorLength {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        Ok(Self {
            dim,
            vectors,
            synthesis: OnceBox::new(),
            operator: OnceBox::new(),
            spectrum: OnceBox::new(),
            inverse: OnceBox::new(),
        })
    }

    /// The family formed by the columns of `t`.
    pub fn from_synthesis(t: &QMatrix) -> Result<Self> {
        Self::new(t.rows(), t.columns())
    }

    /// The standard basis of `ℍⁿ`.
    pub fn standard_basis(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|k| QVector::basis(n, k)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &QVector {
        &self.vectors[i]
    }

    /// Pre-frame operator `T`: `n × m`, column `i` is `uᵢ`.
    pub fn synthesis(&self) -> &QMatrix {
        self.synthesis.get_or_init(|| {
            Box::new(QMatrix::from_columns(self.dim, &self.vectors).expect("lengths checked"))
        })
    }

    /// Transform operator `θ = T*` as an `m × n` matrix.
    pub fn analysis_matrix(&self) -> QMatrix {
        self.synthesis().adjoint()
    }

    /// `θu = {⟨uᵢ, u⟩}ᵢ`.
    pub fn analysis(&self, u: &QVector) -> Result<QVector> {
        self.check_vector(u)?;
        Ok(self.vectors.iter().map(|v| v.inner_unchecked(u)).collect())
    }

    /// `Σ|⟨uᵢ, u⟩|²`.
    pub fn frame_sum(&self, u: &QVector) -> Result<f64> {
        Ok(self.analysis(u)?.norm_sqr())
    }

    /// `T c = Σ uᵢcᵢ`.
    pub fn reconstruct(&self, c: &QVector) -> Result<QVector> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                context: "coefficient sequence",
                expected: self.len(),
                found: c.len(),
            });
        }
        let mut out = QVector::zeros(self.dim);
        for (v, &q) in self.vectors.iter().zip(c.iter()) {
            out.add_mul_right(v, q);
        }
        Ok(out)
    }

    /// Frame operator `S = Σ uᵢuᵢ*`, accumulated from outer products.
    pub fn frame_operator(&self) -> &QMatrix {
        self.operator.get_or_init(|| {
            let n = self.dim;
            let mut s = QMatrix::zeros(n, n);
            for v in &self.vectors {
                for a in 0..n {
                    for b in 0..n {
                        s[(a, b)] += v[a] * v[b].conj();
                    }
                }
            }
            if s.hermitian_deviation() <= SYMMETRIZE_TOL * s.frobenius_norm() {
                s = s.hermitian_part();
            }
            Box::new(s)
        })
    }

    /// Eigendecomposition of `S`.
    pub fn spectrum(&self) -> Result<&HermEig> {
        self.spectrum
            .get_or_init(|| Box::new(herm_eig(self.frame_operator())))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `n·FRAME_EPS·λ_max(S)`.
    pub fn threshold(&self) -> Result<f64> {
        Ok(self.dim as f64 * FRAME_EPS * self.spectrum()?.max())
    }

    pub fn is_frame(&self) -> bool {
        self.require_frame().is_ok()
    }

    fn require_frame(&self) -> Result<&HermEig> {
        let eig = self.spectrum()?;
        let threshold = self.dim as f64 * FRAME_EPS * eig.max();
        if self.len() < self.dim || eig.max() <= 0.0 || eig.min() <= threshold {
            return Err(Error::RankDeficient {
                lambda_min: eig.min(),
                threshold,
            });
        }
        Ok(eig)
    }

    /// `A_opt = λ_min(S)`, `B_opt = λ_max(S)`.
    pub fn optimal_bounds(&self) -> Result<FrameBounds> {
        let eig = self.require_frame()?;
        Ok(FrameBounds {
            lower: eig.min(),
            upper: eig.max(),
        })
    }

    pub fn bound_formulas(&self) -> Result<BoundFormulas> {
        let eig = self.require_frame()?;
        let t = self.synthesis();
        let t_pinv = pinv(t)?;
        let pinv_norm = operator_norm(&t_pinv);
        let t_norm = operator_norm(t);
        Ok(BoundFormulas {
            lower_eig: eig.min(),
            lower_inverse_norm: 1.0 / operator_norm(self.inverse_operator()?),
            lower_pinv: 1.0 / (pinv_norm * pinv_norm),
            upper_eig: eig.max(),
            upper_operator_norm: operator_norm(self.frame_operator()),
            upper_synthesis: t_norm * t_norm,
        })
    }

    /// `S⁻¹` through the eigendecomposition of `S`.
    pub fn inverse_operator(&self) -> Result<&QMatrix> {
        if let Some(inv) = self.inverse.get() {
            return Ok(inv);
        }
        let eig = self.require_frame()?;
        Ok(self
            .inverse
            .get_or_init(|| Box::new(eig.map_spectrum(|x| 1.0 / x))))
    }

    /// `S^(−1/2)`.
    pub fn inverse_sqrt_operator(&self) -> Result<QMatrix> {
        let eig = self.require_frame()?;
        Ok(eig.map_spectrum(|x| 1.0 / math::sqrt(x)))
    }

    /// Frame coefficients `cᵢ = ⟨uᵢ, S⁻¹u⟩`, the minimal-norm representation of `u`.
    pub fn frame_coefficients(&self, u: &QVector) -> Result<QVector> {
        self.check_vector(u)?;
        let w = self.inverse_operator()?.matvec_unchecked(u);
        Ok(self.vectors.iter().map(|v| v.inner_unchecked(&w)).collect())
    }

    pub fn natural_representation(&self, u: &QVector) -> Result<NaturalRepresentation> {
        let c = self.frame_coefficients(u)?;
        let natural = self.reconstruct(&c)?;
        let s_inv = self.inverse_operator()?;
        let mut dual_side = QVector::zeros(self.dim);
        for v in &self.vectors {
            dual_side.add_mul_right(&s_inv.matvec_unchecked(v), v.inner_unchecked(u));
        }
        let residual = (&natural - &dual_side).norm();
        Ok(NaturalRepresentation {
            natural,
            dual_side,
            residual,
        })
    }

    /// Checks the minimal-norm identity for an arbitrary representation `q` of `u`.
    pub fn pythagoras_check(&self, u: &QVector, q: &QVector) -> Result<PythagorasCheck> {
        let tq = self.reconstruct(q)?;
        let un = u.norm();
        let miss = (&tq - u).norm();
        if miss > REPRESENTATION_TOL * un {
            return Err(Error::NotARepresentation {
                residual: if un > 0.0 { miss / un } else { miss },
            });
        }
        let c = self.frame_coefficients(u)?;
        let lhs = q.norm_sqr();
        let rhs = c.norm_sqr() + (&c - q).norm_sqr();
        Ok(PythagorasCheck {
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        })
    }

    /// Canonical dual `{S⁻¹uᵢ}`.
    pub fn canonical_dual(&self) -> Result<Frame> {
        let s_inv = self.inverse_operator()?;
        Frame::new(
            self.dim,
            self.vectors
                .iter()
                .map(|v| s_inv.matvec_unchecked(v))
                .collect(),
        )
    }

    /// Parseval frame `{S^(−1/2)uᵢ}`.
    pub fn parseval_normalize(&self) -> Result<Frame> {
        let r = self.inverse_sqrt_operator()?;
        Frame::new(
            self.dim,
            self.vectors.iter().map(|v| r.matvec_unchecked(v)).collect(),
        )
    }

    /// `m × m` operator `Λ` with `Λₙᵢ = ⟨S⁻¹uₙ, R uᵢ⟩`, carrying the frame
    /// coefficients of `u` to those of `R u`.
    pub fn lambda_operator(&self, r: &QMatrix) -> Result<QMatrix> {
        if r.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                context: "lambda operator",
                expected: self.dim,
                found: if r.rows() != self.dim {
                    r.rows()
                } else {
                    r.cols()
                },
            });
        }
        let s_inv = self.inverse_operator()?;
        let t = self.synthesis();
        let dual = s_inv.matmul_unchecked(t);
        Ok(dual.adjoint().matmul_unchecked(&r.matmul_unchecked(t)))
    }

    /// Status, bounds, spectrum and the standard identity residuals.
    pub fn report(&self) -> Result<FrameReport> {
        let eig = self.spectrum()?;
        let threshold = self.threshold()?;
        let spectrum = eig.eigenvalues.clone();
        if !self.is_frame() {
            return Ok(FrameReport {
                status: FrameStatus::RankDeficient,
                bounds: None,
                formulas: None,
                spectrum,
                threshold,
                residuals: Vec::new(),
            });
        }
        let n = self.dim;
        let identity = QMatrix::identity(n);
        let mut reconstruction = 0.0f64;
        for k in 0..n {
            let e = QVector::basis(n, k);
            let c = self.frame_coefficients(&e)?;
            reconstruction = reconstruction.max((&self.reconstruct(&c)? - &e).norm());
        }
        let dual = self.canonical_dual()?;
        let duality = dual
            .synthesis()
            .matmul_unchecked(&self.analysis_matrix())
            .max_abs_diff(&identity);
        let parseval = self
            .parseval_normalize()?
            .frame_operator()
            .max_abs_diff(&identity);
        let formulas = self.bound_formulas()?;
        Ok(FrameReport {
            status: FrameStatus::Frame,
            bounds: Some(self.optimal_bounds()?),
            formulas: Some(formulas),
            spectrum,
            threshold,
            residuals: alloc::vec![
                ("reconstruction", reconstruction),
                ("duality", duality),
                ("parseval", parseval),
                ("lower_bound_spread", formulas.lower_spread()),
                ("upper_bound_spread", formulas.upper_spread()),
            ],
        })
    }

    fn check_vector(&self, u: &QVector) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "frame vector",
                expected: self.dim,
                found: u.len(),
            });
        }
        Ok(())
    }
}

impl Clone for Frame {
    fn clone(&self) -> Self {
        Frame::new(self.dim, self.vectors.clone()).expect("already validated")
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vectors == other.vectors
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("dim", &self.dim)
            .field("vectors", &self.vectors)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::kernel_basis;
    use crate::quaternion::Quaternion;
    use crate::random;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, k: usize) -> QVector {
        QVector::basis(n, k)
    }

    /// {e1, e1, e2} in ℍ²
    fn doubled_first() -> Frame {
        Frame::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Frame::new(0, vec![]), Err(Error::InvalidShape(_))));
        assert!(matches!(
            Frame::new(2, vec![e(2, 0), e(3, 0)]),
            Err(Error::VectorLength {
                index: 1,
                expected: 2,
                found: 3
            })
        ));
        let empty = Frame::new(2, vec![]).unwrap();
        assert!(!empty.is_frame());
        let too_few = Frame::new(2, vec![e(2, 0)]).unwrap();
        assert!(matches!(
            too_few.optimal_bounds(),
            Err(Error::RankDeficient { .. })
        ));
        let with_zero = Frame::new(2, vec![e(2, 0), QVector::zeros(2), e(2, 1)]).unwrap();
        assert!(with_zero.is_frame());
    }

    #[test]
    fn synthesis_and_analysis() {
        let f = Frame::standard_basis(2).unwrap();
        assert_eq!(f.synthesis(), &QMatrix::identity(2));
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let c = doubled_first().analysis(&e(2, 0).mul_right(q)).unwrap();
        assert_eq!(c, QVector::new(vec![q, q, Quaternion::ZERO]));
        assert!(matches!(
            doubled_first().analysis(&e(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frame_operator_quadratic_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random::frame(&mut rng, 3, 5);
            let u = random::vector(&mut rng, 3);
            let su = f.frame_operator().matvec(&u).unwrap();
            let lhs = su.inner(&u).unwrap();
            let rhs = f.analysis_matrix().matvec(&u).unwrap().norm_sqr();
            assert!((lhs.a0 - rhs).abs() <= 1e-12 * rhs);
            assert!(Quaternion::new(0.0, lhs.a1, lhs.a2, lhs.a3).modulus() <= 1e-12 * rhs);
            // two independent computations of S
            let t = f.synthesis();
            let tt = t.matmul(&t.adjoint()).unwrap();
            assert!(f.frame_operator().max_abs_diff(&tt) <= 1e-12 * tt.frobenius_norm());
            assert!(f.frame_operator().hermitian_deviation() <= 1e-11);
        }
    }

    #[test]
    fn frame_operator_examples() {
        assert_eq!(
            doubled_first().frame_operator(),
            &QMatrix::from_real_diag(&[2.0, 1.0])
        );
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random::unitary(&mut rng, 3);
        let onb = Frame::from_synthesis(&u).unwrap();
        assert!(onb.frame_operator().max_abs_diff(&QMatrix::identity(3)) <= 1e-12);
    }

    #[test]
    fn bounds_examples() {
        let b = doubled_first().optimal_bounds().unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        let b = Frame::standard_basis(3).unwrap().optimal_bounds().unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        let f = Frame::new(2, vec![e(2, 0), e(2, 1).scale(0.5)]).unwrap();
        let b = f.optimal_bounds().unwrap();
        assert!((b.lower - 0.25).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
        let formulas = f.bound_formulas().unwrap();
        assert!((formulas.lower_inverse_norm - 0.25).abs() < 1e-13);
    }

    #[test]
    fn bounds_formulas_agree_and_are_sharp() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, m) in [(1, 1), (2, 3), (3, 7), (5, 9)] {
            let f = random::frame(&mut rng, n, m);
            let fm = f.bound_formulas().unwrap();
            assert!(fm.lower_spread() <= 1e-9, "{fm:?}");
            assert!(fm.upper_spread() <= 1e-9, "{fm:?}");
            let b = f.optimal_bounds().unwrap();
            for _ in 0..1000 {
                let u = random::unit_vector(&mut rng, n);
                let s = f.frame_sum(&u).unwrap();
                assert!(b.lower * (1.0 - 1e-9) <= s && s <= b.upper * (1.0 + 1e-9));
            }
            let eig = f.spectrum().unwrap();
            let top = f.frame_sum(&eig.eigenvectors.column(0)).unwrap();
            let bottom = f.frame_sum(&eig.eigenvectors.column(n - 1)).unwrap();
            assert!((top - b.upper).abs() <= 1e-6 && (bottom - b.lower).abs() <= 1e-6);
        }
    }

    #[test]
    fn coefficients_of_doubled_vector() {
        let f = doubled_first();
        let u = e(2, 0).scale(2.0);
        let c = f.frame_coefficients(&u).unwrap();
        assert!(c.max_abs_diff(&QVector::from_real(&[1.0, 1.0, 0.0])) < 1e-14);
        assert_eq!(
            f.reconstruct(&QVector::from_real(&[2.0, 0.0, 0.0]))
                .unwrap(),
            u
        );
        assert_eq!(
            f.reconstruct(&QVector::from_real(&[1.0, 1.0, 0.0]))
                .unwrap(),
            u
        );
        let check = f
            .pythagoras_check(&u, &QVector::from_real(&[2.0, 0.0, 0.0]))
            .unwrap();
        assert!((check.lhs - 4.0).abs() < 1e-14 && (check.rhs - 4.0).abs() < 1e-13);
        let self_check = f.pythagoras_check(&u, &c).unwrap();
        assert!(self_check.residual < 1e-14);
        assert!(matches!(
            f.pythagoras_check(&u, &QVector::from_real(&[1.0, 0.0, 0.0])),
            Err(Error::NotARepresentation { .. })
        ));
        assert!(matches!(
            f.reconstruct(&QVector::from_real(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coefficients_match_pseudo_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let onb = Frame::from_synthesis(&random::unitary(&mut rng, 3)).unwrap();
        let u = random::vector(&mut rng, 3);
        let c = onb.frame_coefficients(&u).unwrap();
        for i in 0..3 {
            assert!((c[i] - onb.vector(i).inner(&u).unwrap()).modulus() <= 1e-12 * u.norm());
        }
        for _ in 0..30 {
            let f = random::frame(&mut rng, 3, 6);
            let u = random::vector(&mut rng, 3);
            let c = f.frame_coefficients(&u).unwrap();
            let oracle = pinv(f.synthesis()).unwrap().matvec(&u).unwrap();
            assert!(c.max_abs_diff(&oracle) <= 1e-10 * c.norm());
            let rep = f.natural_representation(&u).unwrap();
            assert!((&rep.natural - &u).norm() <= 1e-9 * u.norm());
            assert!(rep.residual <= 1e-9 * u.norm());
        }
    }

    #[test]
    fn minimal_norm_over_kernel_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random::frame(&mut rng, 2, 5);
        let k = kernel_basis(f.synthesis()).unwrap();
        assert_eq!(k.cols(), 3);
        let u = random::vector(&mut rng, 2);
        let c = f.frame_coefficients(&u).unwrap();
        for _ in 0..50 {
            let q = &c + &k.matvec(&random::vector(&mut rng, 3)).unwrap();
            let p = f.pythagoras_check(&u, &q).unwrap();
            assert!(p.residual <= 1e-9 * p.lhs);
            assert!(c.norm() < q.norm());
        }
    }

    #[test]
    fn dual_examples() {
        let d = doubled_first().canonical_dual().unwrap();
        let expect = Frame::new(2, vec![e(2, 0).scale(0.5), e(2, 0).scale(0.5), e(2, 1)]).unwrap();
        for i in 0..3 {
            assert!(d.vector(i).max_abs_diff(expect.vector(i)) < 1e-14);
        }
        let b = d.optimal_bounds().unwrap();
        assert!((b.lower - 0.5).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
        let onb = Frame::standard_basis(2).unwrap();
        assert_eq!(onb.canonical_dual().unwrap(), onb);
    }

    #[test]
    fn parseval_example() {
        let p = doubled_first().parseval_normalize().unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let expect = [e(2, 0).scale(r), e(2, 0).scale(r), e(2, 1)];
        for (v, w) in p.vectors().iter().zip(&expect) {
            assert!(v.max_abs_diff(w) < 1e-14);
        }
        assert!(p.frame_operator().max_abs_diff(&QMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn dual_of_dual_and_parseval_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let f = random::frame(&mut rng, 3, 5);
            let b = f.optimal_bounds().unwrap();
            let d = f.canonical_dual().unwrap();
            let db = d.optimal_bounds().unwrap();
            assert!((db.lower - 1.0 / b.upper).abs() <= 1e-9 * db.lower);
            assert!((db.upper - 1.0 / b.lower).abs() <= 1e-9 * db.upper);
            let dd = d.canonical_dual().unwrap();
            for i in 0..f.len() {
                assert!(dd.vector(i).max_abs_diff(f.vector(i)) <= 1e-9);
            }
            let p = f.parseval_normalize().unwrap();
            assert!(p.frame_operator().max_abs_diff(&QMatrix::identity(3)) <= 1e-9);
        }
    }

    #[test]
    fn lambda_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = random::matrix(&mut rng, 3, 3);
        let onb = Frame::standard_basis(3).unwrap();
        assert!(onb.lambda_operator(&r).unwrap().max_abs_diff(&r) < 1e-14);
        let f = random::frame(&mut rng, 3, 5);
        let l = f.lambda_operator(&QMatrix::identity(3)).unwrap();
        let u = random::vector(&mut rng, 3);
        let c = f.frame_coefficients(&u).unwrap();
        assert!(l.matvec(&c).unwrap().max_abs_diff(&c) <= 1e-10 * c.norm());
        assert!(matches!(
            f.lambda_operator(&QMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lambda_transports_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let f = random::frame(&mut rng, 3, 6);
            let r = random::matrix(&mut rng, 3, 3);
            let l = f.lambda_operator(&r).unwrap();
            let b = f.optimal_bounds().unwrap();
            assert!(operator_norm(&l) <= b.upper * operator_norm(&r) / b.lower * (1.0 + 1e-9));
            for _ in 0..20 {
                let u = random::vector(&mut rng, 3);
                let lhs = l.matvec(&f.frame_coefficients(&u).unwrap()).unwrap();
                let rhs = f.frame_coefficients(&r.matvec(&u).unwrap()).unwrap();
                assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * rhs.norm().max(1.0));
            }
        }
    }

    #[test]
    fn report_statuses() {
        let rep = doubled_first().report().unwrap();
        assert_eq!(rep.status, FrameStatus::Frame);
        let b = rep.bounds.unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        assert!(rep.residuals.iter().all(|(_, r)| *r >= 0.0 && *r < 1e-12));
        let deficient = Frame::new(2, vec![e(2, 0), e(2, 0)])
            .unwrap()
            .report()
            .unwrap();
        assert_eq!(deficient.status, FrameStatus::RankDeficient);
        assert!(deficient.bounds.is_none());
        assert!(*deficient.spectrum.last().unwrap() <= deficient.threshold);
    }
}

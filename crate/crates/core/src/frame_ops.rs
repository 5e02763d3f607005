//! Frames and operators: images of frames under right-linear maps,
//! unitary and projection invariance, intertwiners, frame equivalence,
//! prescribed frame operators and the Bessel ↔ analysis-operator bijection.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frames::{Frame, FrameBounds, FRAME_EPS};
use crate::math;
use crate::qlinalg::{
    herm_eig, operator_norm, orthonormality_deviation, svd, QMatrix, QSvd, QVector,
    DEFAULT_RANK_EPS, HERMITIAN_TOL, ORTHONORMAL_TOL,
};

/// Kernel vectors of `T₁` may leak this much (relative) into `ker(T₂)⊥`.
pub const KERNEL_INCLUSION_TOL: f64 = 1e-9;
/// Accepted deviation of `U*U` and `UU*` from the identity.
pub const UNITARY_TOL: f64 = 1e-10;
/// Accepted deviation of `L₁L₂` and `L₂L₁` from the identity.
pub const INVERSE_TOL: f64 = 1e-9;

/// What is known about `{L uᵢ}` after mapping.
#[derive(Clone, Debug, PartialEq)]
pub struct MapReport {
    pub surjective: bool,
    pub is_frame: bool,
    /// `‖S_L − L S L*‖ / ‖L S L*‖`, when the image is a frame.
    pub operator_residual: Option<f64>,
    /// Optimal bounds of the image.
    pub bounds: Option<FrameBounds>,
    /// `A·M²` with `M` the smallest nonzero singular value of `L`.
    pub lower_floor: Option<f64>,
    /// `B·‖L‖²`.
    pub upper_ceiling: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MappedFrame {
    pub frame: Frame,
    pub report: MapReport,
}

/// Image `{L uᵢ}` of a frame under an `n' × n` operator.
///
/// The image is a frame of `ℍⁿ'` exactly when `L` is surjective, and then
/// its frame operator is `L S L*`.
pub fn map_frame(l: &QMatrix, f: &Frame) -> Result<MappedFrame> {
    if l.cols() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "map_frame operator columns",
            expected: f.dim(),
            found: l.cols(),
        });
    }
    let image = Frame::new(
        l.rows(),
        f.vectors().iter().map(|v| l.matvec_unchecked(v)).collect(),
    )?;
    let l_svd = svd(l)?;
    let surjective = l_svd.rank() == l.rows();
    let is_frame = image.is_frame();

    let mut report = MapReport {
        surjective,
        is_frame,
        operator_residual: None,
        bounds: None,
        lower_floor: None,
        upper_ceiling: None,
    };
    if let Ok(b) = f.optimal_bounds() {
        let m = l_svd.sigma_min_nonzero();
        let norm = l_svd.sigma_max();
        report.lower_floor = Some(b.lower * m * m);
        report.upper_ceiling = Some(b.upper * norm * norm);
    }
    if is_frame {
        let lsl = l
            .matmul_unchecked(f.frame_operator())
            .matmul_unchecked(&l.adjoint());
        let diff = image.frame_operator() - &lsl;
        report.operator_residual = Some(operator_norm(&diff) / operator_norm(&lsl));
        report.bounds = image.optimal_bounds().ok();
    }
    Ok(MappedFrame {
        frame: image,
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryInvariance {
    pub original: FrameBounds,
    pub mapped: FrameBounds,
    /// Largest relative difference between corresponding bounds.
    pub residual: f64,
}

/// Largest entrywise deviation of `U*U` or `UU*` from the identity.
pub fn unitarity_deviation(u: &QMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let id = QMatrix::identity(u.rows());
    let a = u.adjoint();
    a.matmul_unchecked(u)
        .max_abs_diff(&id)
        .max(u.matmul_unchecked(&a).max_abs_diff(&id))
}

/// Compares the optimal bounds of `F` and `{U uᵢ}` for unitary `U`.
pub fn unitary_invariance_check(u: &QMatrix, f: &Frame) -> Result<UnitaryInvariance> {
    let deviation = unitarity_deviation(u);
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let original = f.optimal_bounds()?;
    let mapped = map_frame(u, f)?.frame.optimal_bounds()?;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
    Ok(UnitaryInvariance {
        original,
        mapped,
        residual: rel(original.lower, mapped.lower).max(rel(original.upper, mapped.upper)),
    })
}

/// `{P uᵢ}` for the orthogonal projection `P = B B*`, in the coordinates of
/// the orthonormal basis `B` of the target subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedFrame {
    /// Vectors `B* uᵢ` of `ℍᵈ`.
    pub frame: Frame,
    pub basis: QMatrix,
    /// Optimal bounds of the source frame; they remain valid bounds.
    pub inherited: Option<FrameBounds>,
    /// Optimal bounds recomputed in the subspace.
    pub optimal: Option<FrameBounds>,
}

impl ProjectedFrame {
    /// The same family as vectors `B(B* uᵢ)` of the ambient space.
    pub fn ambient(&self) -> Result<Frame> {
        Frame::new(
            self.basis.rows(),
            self.frame
                .vectors()
                .iter()
                .map(|v| self.basis.matvec_unchecked(v))
                .collect(),
        )
    }
}

pub fn project_frame(b: &QMatrix, f: &Frame) -> Result<ProjectedFrame> {
    if b.rows() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "project_frame basis rows",
            expected: f.dim(),
            found: b.rows(),
        });
    }
    let deviation = orthonormality_deviation(b);
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    let bt = b.adjoint();
    let frame = Frame::new(
        b.cols(),
        f.vectors().iter().map(|v| bt.matvec_unchecked(v)).collect(),
    )?;
    let optimal = frame.optimal_bounds().ok();
    Ok(ProjectedFrame {
        frame,
        basis: b.clone(),
        inherited: f.optimal_bounds().ok(),
        optimal,
    })
}

/// Outcome of looking for `L` with `L uᵢ = vᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwining {
    /// `T₂ T₁†`, present iff `ker T₁ ⊆ ker T₂`.
    pub operator: Option<QMatrix>,
    /// `maxᵢ ‖L uᵢ − vᵢ‖` when `operator` is present.
    pub residual: Option<f64>,
    /// Largest leak of a unit kernel vector of `T₁` into `ker(T₂)⊥`.
    pub inclusion_residual: f64,
    /// A kernel vector of `T₁` that `T₂` does not annihilate.
    pub witness: Option<QVector>,
}

struct KernelInclusion {
    residual: f64,
    witness: Option<QVector>,
}

/// Tests `ker T₁ ⊆ ker T₂` by projecting an orthonormal basis of `ker T₁`
/// onto `ker(T₂)⊥ = range(T₂*)`.
fn kernel_inclusion(t1: &QSvd, t2: &QSvd) -> KernelInclusion {
    let k1 = t1.kernel_with(DEFAULT_RANK_EPS);
    let r2 = t2.rank();
    let row_space = t2.v.column_range(0..r2);
    let row_space_adj = row_space.adjoint();
    let mut residual = 0.0f64;
    let mut worst: Option<QVector> = None;
    for j in 0..k1.cols() {
        let k = k1.column(j);
        let leak = row_space
            .matvec_unchecked(&row_space_adj.matvec_unchecked(&k))
            .norm();
        if leak > residual {
            residual = leak;
            worst = Some(k);
        }
    }
    KernelInclusion {
        witness: if residual > KERNEL_INCLUSION_TOL {
            worst
        } else {
            None
        },
        residual,
    }
}

fn check_pair(f: &Frame, g: &Frame) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::IndexCountMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            context: "frame dimensions",
            expected: f.dim(),
            found: g.dim(),
        });
    }
    Ok(())
}

fn intertwine_with(f: &Frame, g: &Frame, t1: &QSvd, t2: &QSvd) -> Intertwining {
    let inclusion = kernel_inclusion(t1, t2);
    if inclusion.witness.is_some() {
        return Intertwining {
            operator: None,
            residual: None,
            inclusion_residual: inclusion.residual,
            witness: inclusion.witness,
        };
    }
    let l = g
        .synthesis()
        .matmul_unchecked(&t1.pinv_with(DEFAULT_RANK_EPS));
    let residual = f
        .vectors()
        .iter()
        .zip(g.vectors())
        .map(|(u, v)| (&l.matvec_unchecked(u) - v).norm())
        .fold(0.0, f64::max);
    Intertwining {
        operator: Some(l),
        residual: Some(residual),
        inclusion_residual: inclusion.residual,
        witness: None,
    }
}

/// The operator `L` with `L uᵢ = vᵢ`, built as `T₂ T₁†` when `ker T₁ ⊆ ker T₂`.
pub fn intertwiner(f: &Frame, g: &Frame) -> Result<Intertwining> {
    check_pair(f, g)?;
    let t1 = svd(f.synthesis())?;
    let t2 = svd(g.synthesis())?;
    Ok(intertwine_with(f, g, &t1, &t2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `ker T₁ = ker T₂` and the intertwiner is invertible.
    Equivalent,
    /// An intertwiner `F → G` exists but no invertible one.
    OneSided,
    /// `ker T₁ ⊄ ker T₂`.
    None,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equivalent => "equivalent",
            Relation::OneSided => "one-sided",
            Relation::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceResult {
    pub relation: Relation,
    pub intertwiner: Option<QMatrix>,
    /// `maxᵢ ‖L uᵢ − vᵢ‖` when an intertwiner exists, otherwise the kernel
    /// inclusion residual.
    pub residual: f64,
    /// Kernel vector of `T₁` not annihilated by `T₂` (or, for a one-sided
    /// relation, of `T₂` not annihilated by `T₁`).
    pub witness: Option<QVector>,
    /// `max(‖L₁L₂ − I‖, ‖L₂L₁ − I‖)` entrywise, when both directions exist.
    pub inverse_residual: Option<f64>,
}

/// Two frames are equivalent iff their synthesis operators share a kernel;
/// the invertible `L` with `L uᵢ = vᵢ` is returned together with a check of
/// its inverse `T₁ T₂†`.
pub fn are_equivalent(f: &Frame, g: &Frame) -> Result<EquivalenceResult> {
    check_pair(f, g)?;
    let t1 = svd(f.synthesis())?;
    let t2 = svd(g.synthesis())?;
    let forward = intertwine_with(f, g, &t1, &t2);
    let Some(l) = forward.operator else {
        return Ok(EquivalenceResult {
            relation: Relation::None,
            intertwiner: None,
            residual: forward.inclusion_residual,
            witness: forward.witness,
            inverse_residual: None,
        });
    };
    let residual = forward.residual.unwrap_or(0.0);
    let backward = intertwine_with(g, f, &t2, &t1);
    let Some(l_back) = backward.operator else {
        return Ok(EquivalenceResult {
            relation: Relation::OneSided,
            intertwiner: Some(l),
            residual,
            witness: backward.witness,
            inverse_residual: None,
        });
    };
    let n = f.dim();
    let id = QMatrix::identity(n);
    let inverse_residual = l
        .matmul_unchecked(&l_back)
        .max_abs_diff(&id)
        .max(l_back.matmul_unchecked(&l).max_abs_diff(&id));
    let invertible = svd(&l)?.rank() == n && inverse_residual <= INVERSE_TOL;
    Ok(EquivalenceResult {
        relation: if invertible {
            Relation::Equivalent
        } else {
            Relation::OneSided
        },
        intertwiner: Some(l),
        residual,
        witness: None,
        inverse_residual: Some(inverse_residual),
    })
}

/// The frame `{L^(1/2) eᵢ}`, whose frame operator is the given Hermitian
/// positive definite `L`.
pub fn frame_with_frame_operator(l: &QMatrix) -> Result<Frame> {
    l.check_hermitian(HERMITIAN_TOL)?;
    let eig = herm_eig(l)?;
    let n = l.rows();
    let threshold = n as f64 * FRAME_EPS * eig.max();
    if eig.max() <= 0.0 || eig.min() <= threshold {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.min(),
            threshold,
        });
    }
    let root = eig.map_spectrum(math::sqrt);
    Frame::from_synthesis(&root)
}

/// The family `{L* vᵢ}` whose analysis operator is the `m × n` matrix `L`.
///
/// Pure data rearrangement: vector `i` is the conjugated row `i` of `L`.
pub fn bessel_from_operator(l: &QMatrix) -> Result<Frame> {
    let vectors: Vec<QVector> = (0..l.rows())
        .map(|i| l.row(i).iter().map(|q| q.conj()).collect())
        .collect();
    Frame::new(l.cols(), vectors)
}

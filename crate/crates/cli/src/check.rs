//! Numerical theorem checker.
//!
//! Each check draws seeded random instances at every requested size and
//! reports the largest residual it saw. A check passes when that residual is
//! within its tolerance. Boolean conditions (a flag that must be set, a
//! relation that must be found) report 0 on success and infinity on failure.

use std::thread;

use qframe_core::frame_ops::unitarity_deviation;
use qframe_core::qlinalg::complex::hermitian_eigen;
use qframe_core::qlinalg::orthonormality_deviation;
use qframe_core::{
    are_equivalent, bessel_from_operator, frame_with_frame_operator, herm_eig, intertwiner,
    kernel_basis, map_frame, operator_norm, pinv, project_frame, random, solve_min_norm, svd,
    unitary_invariance_check, Frame, QMatrix, QVector, Quaternion, Relation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::frame_with_operator;
use crate::formats::{FrameFile, OperatorFile, VectorFile};

pub const DEFAULT_SIZES: [(usize, usize); 3] = [(2, 3), (3, 5), (4, 8)];
pub const DEFAULT_TRIALS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// `(n, m)` pairs with `1 ≤ n ≤ m`.
    pub sizes: Vec<(usize, usize)>,
    /// Random instances per size and check.
    pub trials: usize,
    /// Replaces every tolerance when set.
    pub tolerance: Option<f64>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            sizes: DEFAULT_SIZES.to_vec(),
            trials: DEFAULT_TRIALS,
            tolerance: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub statement: &'static str,
    /// `null` in JSON when infinite.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub sizes: Vec<[usize; 2]>,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = Result<f64, qframe_core::Error>;

struct Ctx {
    rng: ChaCha8Rng,
    sizes: Vec<(usize, usize)>,
    trials: usize,
}

impl Ctx {
    /// Every `(n, m)` repeated `trials` times.
    fn cases(&self) -> Vec<(usize, usize)> {
        self.sizes
            .iter()
            .flat_map(|&s| std::iter::repeat_n(s, self.trials))
            .collect()
    }

    fn frame(&mut self, n: usize, m: usize) -> Frame {
        loop {
            let f = random::frame(&mut self.rng, n, m);
            if f.is_frame() {
                return f;
            }
        }
    }

    fn invertible(&mut self, n: usize) -> QMatrix {
        loop {
            let l = random::matrix(&mut self.rng, n, n);
            if svd(&l).is_ok_and(|s| s.rank() == n) {
                return l;
            }
        }
    }
}

struct Check {
    name: &'static str,
    statement: &'static str,
    tolerance: f64,
    run: fn(&mut Ctx) -> Outcome,
}

fn rel(x: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        x / scale
    } else {
        x
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    rel((a - b).abs(), a.abs().max(b.abs()))
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        f64::INFINITY
    }
}

const CHECKS: &[Check] = &[
    Check {
        name: "quaternion_unit_table",
        statement: "products of ±1, ±i, ±j, ±k stay in that set with ij = k, jk = i, ki = j, i² = j² = k² = −1, and ij ≠ ji",
        tolerance: 0.0,
        run: unit_table,
    },
    Check {
        name: "modulus_multiplicative",
        statement: "|pq| = |p||q|",
        tolerance: 1e-13,
        run: modulus_multiplicative,
    },
    Check {
        name: "conjugation_anti_homomorphism",
        statement: "conj(pq) = conj(q) conj(p)",
        tolerance: 1e-13,
        run: conj_anti_homomorphism,
    },
    Check {
        name: "cauchy_schwarz",
        statement: "|<u, v>| ≤ ||u|| ||v||, with equality for v = u q",
        tolerance: 1e-13,
        run: cauchy_schwarz,
    },
    Check {
        name: "adjoint_identity",
        statement: "<M u, v> = <u, M* v>",
        tolerance: 1e-11,
        run: adjoint_identity,
    },
    Check {
        name: "complex_adjoint_homomorphism",
        statement: "χ(M + N) = χ(M) + χ(N), χ(MN) = χ(M)χ(N), χ(M*) = χ(M)*",
        tolerance: 1e-12,
        run: complex_adjoint_homomorphism,
    },
    Check {
        name: "eigenvalue_doubling",
        statement: "the spectrum of χ(M) for Hermitian M is each quaternionic eigenvalue twice",
        tolerance: 1e-9,
        run: eigenvalue_doubling,
    },
    Check {
        name: "hermitian_eigendecomposition",
        statement: "M = U Λ U* with U unitary, including repeated eigenvalues",
        tolerance: 1e-9,
        run: hermitian_eigendecomposition,
    },
    Check {
        name: "singular_value_decomposition",
        statement: "M = U Σ V* with orthonormal U and V",
        tolerance: 1e-9,
        run: singular_value_decomposition,
    },
    Check {
        name: "penrose_conditions",
        statement: "M M† M = M, M† M M† = M†, (M M†)* = M M†, (M† M)* = M† M at every rank",
        tolerance: 1e-9,
        run: penrose_conditions,
    },
    Check {
        name: "frame_inequality",
        statement: "A ||u||² ≤ Σ|<u_i, u>|² ≤ B ||u||², attained at the extreme eigenvectors of S",
        tolerance: 1e-9,
        run: frame_inequality,
    },
    Check {
        name: "optimal_bound_formulas",
        statement: "A = λ_min(S) = 1/||S⁻¹|| = 1/||T†||² and B = λ_max(S) = ||S|| = ||T||²",
        tolerance: 1e-8,
        run: optimal_bound_formulas,
    },
    Check {
        name: "pseudo_inverse_of_synthesis",
        statement: "T† = T* S⁻¹",
        tolerance: 1e-9,
        run: pseudo_inverse_of_synthesis,
    },
    Check {
        name: "natural_representation",
        statement: "u = Σ u_i <u_i, S⁻¹u> = Σ S⁻¹u_i <u_i, u>",
        tolerance: 1e-9,
        run: natural_representation,
    },
    Check {
        name: "frame_coefficients_minimal_norm_solution",
        statement: "the frame coefficients of u are the minimal-norm solution of T q = u",
        tolerance: 1e-9,
        run: coefficients_are_min_norm_solution,
    },
    Check {
        name: "minimal_norm_representation",
        statement: "Σ|q_i|² = Σ|c_i|² + Σ|c_i − q_i|² for every representation q, so ||c|| < ||q|| when q ≠ c",
        tolerance: 1e-8,
        run: minimal_norm_representation,
    },
    Check {
        name: "canonical_dual",
        statement: "the canonical dual has bounds (1/B, 1/A) and its own dual is the original frame",
        tolerance: 1e-9,
        run: canonical_dual,
    },
    Check {
        name: "parseval_normalization",
        statement: "{S^(−1/2) u_i} has frame operator I",
        tolerance: 1e-9,
        run: parseval_normalization,
    },
    Check {
        name: "coefficient_transport",
        statement: "Λ carries the frame coefficients of u to those of R u, and ||Λ|| ≤ B ||R|| / A",
        tolerance: 1e-9,
        run: coefficient_transport,
    },
    Check {
        name: "image_frame_criterion",
        statement: "{L u_i} is a frame iff L is surjective, with frame operator L S L* and bounds in [A m², B ||L||²]",
        tolerance: 1e-9,
        run: image_frame_criterion,
    },
    Check {
        name: "unitary_invariance",
        statement: "a unitary image of a frame has the same optimal bounds",
        tolerance: 1e-9,
        run: unitary_invariance,
    },
    Check {
        name: "projection_of_parseval_frame",
        statement: "the orthogonal projection of a Parseval frame onto a subspace is a Parseval frame of it",
        tolerance: 1e-9,
        run: projection_of_parseval_frame,
    },
    Check {
        name: "equivalence_relation",
        statement: "frame equivalence is reflexive, symmetric and transitive on invertible images",
        tolerance: 1e-9,
        run: equivalence_relation,
    },
    Check {
        name: "intertwiner_composition",
        statement: "the intertwiner F → H is the composite of F → G and G → H",
        tolerance: 1e-8,
        run: intertwiner_composition,
    },
    Check {
        name: "kernel_witness",
        statement: "frames with different synthesis kernels are not equivalent and a kernel witness is returned",
        tolerance: 1e-9,
        run: kernel_witness,
    },
    Check {
        name: "prescribed_frame_operator",
        statement: "a frame built for a positive definite L has frame operator L",
        tolerance: 1e-9,
        run: prescribed_frame_operator,
    },
    Check {
        name: "bessel_operator_correspondence",
        statement: "the family built from an operator L has analysis operator L",
        tolerance: 0.0,
        run: bessel_operator_correspondence,
    },
    Check {
        name: "file_round_trip",
        statement: "frame, operator and vector files read back exactly what was written",
        tolerance: 0.0,
        run: file_round_trip,
    },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Runs every check; checks run in parallel, each on its own random stream,
/// so the report depends only on the configuration.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let results: Vec<CheckResult> = thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .enumerate()
            .map(|(index, check)| s.spawn(move || run_check(config, index, check)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    SuiteReport {
        seed: config.seed,
        sizes: config.sizes.iter().map(|&(n, m)| [n, m]).collect(),
        trials: config.trials,
        passed: results.iter().all(|r| r.passed),
        checks: results,
    }
}

fn run_check(config: &SuiteConfig, index: usize, check: &Check) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let mut ctx = Ctx {
        rng,
        sizes: config.sizes.clone(),
        trials: config.trials,
    };
    let tolerance = config.tolerance.unwrap_or(check.tolerance);
    let (max_residual, error) = match (check.run)(&mut ctx) {
        Ok(r) if r.is_nan() => (f64::INFINITY, Some("residual is NaN".to_string())),
        Ok(r) => (r, None),
        Err(e) => (f64::INFINITY, Some(e.to_string())),
    };
    CheckResult {
        name: check.name,
        statement: check.statement,
        max_residual,
        tolerance,
        passed: max_residual <= tolerance,
        error,
    }
}

fn unit_table(_: &mut Ctx) -> Outcome {
    use Quaternion as Q;
    let units = [Q::ONE, Q::I, Q::J, Q::K, -Q::ONE, -Q::I, -Q::J, -Q::K];
    let mut worst = 0.0f64;
    for p in units {
        for q in units {
            let pq = p * q;
            let nearest = units
                .iter()
                .map(|u| pq.max_abs_diff(*u))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    let table = [
        (Q::I * Q::J, Q::K),
        (Q::J * Q::K, Q::I),
        (Q::K * Q::I, Q::J),
        (Q::I * Q::I, -Q::ONE),
        (Q::J * Q::J, -Q::ONE),
        (Q::K * Q::K, -Q::ONE),
        (Q::I * Q::J * Q::K, -Q::ONE),
    ];
    for (got, want) in table {
        worst = worst.max(got.max_abs_diff(want));
    }
    Ok(worst.max(flag(Q::I * Q::J != Q::J * Q::I)))
}

fn pair_count(ctx: &Ctx) -> usize {
    1000 * ctx.trials * ctx.sizes.len().max(1)
}

fn modulus_multiplicative(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..pair_count(ctx) {
        let p = random::quaternion(&mut ctx.rng);
        let q = random::quaternion(&mut ctx.rng);
        worst = worst.max(rel_diff((p * q).modulus(), p.modulus() * q.modulus()));
    }
    Ok(worst)
}

fn conj_anti_homomorphism(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..pair_count(ctx) {
        let p = random::quaternion(&mut ctx.rng);
        let q = random::quaternion(&mut ctx.rng);
        let d = (p * q).conj().max_abs_diff(q.conj() * p.conj());
        worst = worst.max(rel(d, p.modulus() * q.modulus()));
    }
    Ok(worst)
}

fn cauchy_schwarz(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, _) in ctx.cases() {
        for _ in 0..100 {
            let u = random::vector(&mut ctx.rng, n);
            let v = random::vector(&mut ctx.rng, n);
            let bound = u.norm() * v.norm();
            let excess = (u.inner(&v)?.modulus() - bound).max(0.0);
            worst = worst.max(rel(excess, bound));
            let w = u.mul_right(random::quaternion(&mut ctx.rng));
            worst = worst.max(rel_diff(u.inner(&w)?.modulus(), u.norm() * w.norm()));
        }
    }
    Ok(worst)
}

fn adjoint_identity(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let a = random::matrix(&mut ctx.rng, n, m);
        let u = random::vector(&mut ctx.rng, m);
        let v = random::vector(&mut ctx.rng, n);
        let lhs = a.matvec(&u)?.inner(&v)?;
        let rhs = u.inner(&a.adjoint().matvec(&v)?)?;
        worst = worst.max(rel(
            lhs.max_abs_diff(rhs),
            a.frobenius_norm() * u.norm() * v.norm(),
        ));
    }
    Ok(worst)
}

fn complex_adjoint_homomorphism(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let a = random::matrix(&mut ctx.rng, n, m);
        let b = random::matrix(&mut ctx.rng, n, m);
        let c = random::matrix(&mut ctx.rng, m, n);
        let (ca, cb, cc) = (
            a.complex_adjoint(),
            b.complex_adjoint(),
            c.complex_adjoint(),
        );
        let sum = (&a + &b).complex_adjoint().max_abs_diff(&ca.add(&cb));
        let product = a
            .matmul(&c)?
            .complex_adjoint()
            .max_abs_diff(&ca.matmul(&cc));
        let adjoint = a.adjoint().complex_adjoint().max_abs_diff(&ca.adjoint());
        let scale = a.max_abs().max(b.max_abs());
        worst = worst
            .max(rel(sum, scale))
            .max(rel(product, a.frobenius_norm() * c.frobenius_norm()))
            .max(rel(adjoint, scale));
    }
    Ok(worst)
}

fn hermitian_sample(ctx: &mut Ctx, n: usize, k: usize) -> QMatrix {
    if k.is_multiple_of(2) {
        random::hermitian(&mut ctx.rng, n)
    } else {
        random::hermitian_with_repeated_spectrum(&mut ctx.rng, n)
    }
}

fn eigenvalue_doubling(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (k, (n, _)) in ctx.cases().into_iter().enumerate() {
        let m = hermitian_sample(ctx, n, k);
        let eig = herm_eig(&m)?;
        let (doubled, _) = hermitian_eigen(&m.complex_adjoint());
        let scale = 1.0 + eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for (i, lambda) in eig.eigenvalues.iter().enumerate() {
            let d = (doubled[2 * i] - lambda)
                .abs()
                .max((doubled[2 * i + 1] - lambda).abs());
            worst = worst.max(d / scale);
        }
    }
    Ok(worst)
}

fn hermitian_eigendecomposition(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (k, (n, _)) in ctx.cases().into_iter().enumerate() {
        let m = hermitian_sample(ctx, n, k);
        let eig = herm_eig(&m)?;
        let u = &eig.eigenvectors;
        worst = worst
            .max(rel(eig.reconstruct().max_abs_diff(&m), m.max_abs()))
            .max(unitarity_deviation(u));
    }
    Ok(worst)
}

fn singular_value_decomposition(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        for a in [
            random::matrix(&mut ctx.rng, n, m),
            random::matrix(&mut ctx.rng, m, n),
        ] {
            let s = svd(&a)?;
            worst = worst
                .max(rel(s.reconstruct().max_abs_diff(&a), a.max_abs()))
                .max(orthonormality_deviation(&s.u))
                .max(orthonormality_deviation(&s.v));
        }
    }
    Ok(worst)
}

fn penrose_conditions(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        for r in 0..=n.min(m) {
            let a = if r == 0 {
                QMatrix::zeros(n, m)
            } else {
                random::matrix_of_rank(&mut ctx.rng, n, m, r)
            };
            let p = pinv(&a)?;
            let ap = a.matmul(&p)?;
            let pa = p.matmul(&a)?;
            worst = worst
                .max(rel(ap.matmul(&a)?.max_abs_diff(&a), a.max_abs()))
                .max(rel(pa.matmul(&p)?.max_abs_diff(&p), p.max_abs()))
                .max(ap.adjoint().max_abs_diff(&ap))
                .max(pa.adjoint().max_abs_diff(&pa));
        }
    }
    Ok(worst)
}

fn frame_inequality(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let b = f.optimal_bounds()?;
        for _ in 0..100 {
            let u = random::unit_vector(&mut ctx.rng, n);
            let s = f.frame_sum(&u)?;
            worst = worst
                .max((b.lower - s).max(0.0) / b.lower)
                .max((s - b.upper).max(0.0) / b.upper);
        }
        let eig = f.spectrum()?;
        let top = eig.eigenvectors.column(0);
        let bottom = eig.eigenvectors.column(n - 1);
        worst = worst
            .max(rel_diff(f.frame_sum(&top)?, b.upper))
            .max(rel_diff(f.frame_sum(&bottom)?, b.lower));
    }
    Ok(worst)
}

fn optimal_bound_formulas(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m).bound_formulas()?;
        worst = worst.max(f.lower_spread()).max(f.upper_spread());
    }
    Ok(worst)
}

fn pseudo_inverse_of_synthesis(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let t = f.synthesis();
        let p = pinv(t)?;
        let formula = t.adjoint().matmul(f.inverse_operator()?)?;
        worst = worst.max(rel(p.max_abs_diff(&formula), p.max_abs()));
    }
    Ok(worst)
}

fn natural_representation(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        for _ in 0..10 {
            let u = random::vector(&mut ctx.rng, n);
            let r = f.natural_representation(&u)?;
            let un = u.norm();
            worst = worst
                .max(rel((&r.natural - &u).norm(), un))
                .max(rel((&r.dual_side - &u).norm(), un))
                .max(rel(r.residual, un));
        }
    }
    Ok(worst)
}

fn coefficients_are_min_norm_solution(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        for _ in 0..10 {
            let u = random::vector(&mut ctx.rng, n);
            let c = f.frame_coefficients(&u)?;
            let x = solve_min_norm(f.synthesis(), &u)?;
            worst = worst.max(rel((&c - &x).norm(), c.norm()));
        }
    }
    Ok(worst)
}

fn kernel_vector(rng: &mut ChaCha8Rng, kernel: &QMatrix) -> QVector {
    let coeffs = random::vector(rng, kernel.cols());
    kernel
        .matvec(&coeffs)
        .expect("coefficient count matches kernel dimension")
}

fn minimal_norm_representation(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let kernel = kernel_basis(f.synthesis())?;
        let u = random::vector(&mut ctx.rng, n);
        let c = f.frame_coefficients(&u)?;
        for _ in 0..20 {
            let k = kernel_vector(&mut ctx.rng, &kernel);
            let q = &c + &k;
            let check = f.pythagoras_check(&u, &q)?;
            worst = worst.max(rel(check.residual, check.lhs));
            if k.norm() > 1e-6 {
                worst = worst.max(flag(c.norm() < q.norm()));
            }
        }
    }
    Ok(worst)
}

fn canonical_dual(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let b = f.optimal_bounds()?;
        let dual = f.canonical_dual()?;
        let db = dual.optimal_bounds()?;
        worst = worst
            .max(rel_diff(db.lower, 1.0 / b.upper))
            .max(rel_diff(db.upper, 1.0 / b.lower));
        let back = dual.canonical_dual()?;
        for (u, v) in f.vectors().iter().zip(back.vectors()) {
            worst = worst.max(u.max_abs_diff(v));
        }
    }
    Ok(worst)
}

fn parseval_normalization(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let p = ctx.frame(n, m).parseval_normalize()?;
        worst = worst.max(p.frame_operator().max_abs_diff(&QMatrix::identity(n)));
    }
    Ok(worst)
}

fn coefficient_transport(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let r = random::matrix(&mut ctx.rng, n, n);
        let u = random::vector(&mut ctx.rng, n);
        let lambda = f.lambda_operator(&r)?;
        let target = f.frame_coefficients(&r.matvec(&u)?)?;
        let moved = lambda.matvec(&f.frame_coefficients(&u)?)?;
        worst = worst.max(rel((&moved - &target).norm(), target.norm()));
        let b = f.optimal_bounds()?;
        let limit = b.upper * operator_norm(&r) / b.lower;
        worst = worst.max((operator_norm(&lambda) - limit).max(0.0) / limit);
    }
    Ok(worst)
}

fn image_frame_criterion(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let target = 1 + ctx.rng.random_range(0..n);
        let l = random::matrix(&mut ctx.rng, target, n);
        let mapped = map_frame(&l, &f)?;
        let r = &mapped.report;
        worst = worst.max(flag(r.surjective && r.is_frame));
        worst = worst.max(r.operator_residual.unwrap_or(f64::INFINITY));
        if let (Some(b), Some(lo), Some(hi)) = (r.bounds, r.lower_floor, r.upper_ceiling) {
            worst = worst
                .max((lo - b.lower).max(0.0) / lo)
                .max((b.upper - hi).max(0.0) / hi);
        }

        let rank = ctx.rng.random_range(0..target);
        let deficient = if rank == 0 {
            QMatrix::zeros(target, n)
        } else {
            random::matrix_of_rank(&mut ctx.rng, target, n, rank)
        };
        let r = map_frame(&deficient, &f)?.report;
        worst = worst.max(flag(!r.surjective && !r.is_frame));
    }
    Ok(worst)
}

fn unitary_invariance(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let u = random::unitary(&mut ctx.rng, n);
        worst = worst.max(unitary_invariance_check(&u, &f)?.residual);
    }
    Ok(worst)
}

fn projection_of_parseval_frame(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let p = ctx.frame(n, m).parseval_normalize()?;
        let d = 1 + ctx.rng.random_range(0..n);
        let b = random::orthonormal_columns(&mut ctx.rng, n, d);
        let projected = project_frame(&b, &p)?;
        worst = worst.max(
            projected
                .frame
                .frame_operator()
                .max_abs_diff(&QMatrix::identity(d)),
        );
    }
    Ok(worst)
}

fn equivalent(f: &Frame, g: &Frame) -> Outcome {
    let r = are_equivalent(f, g)?;
    if r.relation != Relation::Equivalent {
        return Ok(f64::INFINITY);
    }
    let scale = g.vectors().iter().fold(0.0f64, |a, v| a.max(v.norm()));
    Ok(rel(r.residual, scale).max(r.inverse_residual.unwrap_or(f64::INFINITY)))
}

fn equivalence_relation(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let l1 = ctx.invertible(n);
        let l2 = ctx.invertible(n);
        let g = map_frame(&l1, &f)?.frame;
        let h = map_frame(&l2, &g)?.frame;
        for (a, b) in [(&f, &f), (&f, &g), (&g, &f), (&g, &h), (&f, &h), (&h, &f)] {
            worst = worst.max(equivalent(a, b)?);
        }
    }
    Ok(worst)
}

fn intertwiner_composition(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = ctx.frame(n, m);
        let l1 = ctx.invertible(n);
        let l2 = ctx.invertible(n);
        let g = map_frame(&l1, &f)?.frame;
        let h = map_frame(&l2, &g)?.frame;
        let (Some(fg), Some(gh), Some(fh)) = (
            intertwiner(&f, &g)?.operator,
            intertwiner(&g, &h)?.operator,
            intertwiner(&f, &h)?.operator,
        ) else {
            return Ok(f64::INFINITY);
        };
        worst = worst.max(rel(gh.matmul(&fg)?.max_abs_diff(&fh), fh.max_abs()));
    }
    Ok(worst)
}

fn witness_residual(f: &Frame, g: &Frame) -> Outcome {
    let r = are_equivalent(f, g)?;
    let Some(w) = r.witness.filter(|_| r.relation == Relation::None) else {
        return Ok(f64::INFINITY);
    };
    let wn = w.norm();
    let in_kernel = rel(f.synthesis().matvec(&w)?.norm(), wn);
    let escapes = rel(g.synthesis().matvec(&w)?.norm(), wn);
    Ok(in_kernel.max(flag(escapes > 1e-3)))
}

fn kernel_witness(ctx: &mut Ctx) -> Outcome {
    let e = |k| QVector::basis(2, k);
    let a = Frame::new(2, vec![e(0), e(0), e(1)])?;
    let b = Frame::new(2, vec![e(0), e(1), e(1)])?;
    let mut worst = witness_residual(&a, &b)?.max(witness_residual(&b, &a)?);
    for _ in 0..ctx.trials * ctx.sizes.len().max(1) {
        let u = random::unitary(&mut ctx.rng, 2);
        let ua = map_frame(&u, &a)?.frame;
        let ub = map_frame(&u, &b)?.frame;
        worst = worst.max(witness_residual(&ua, &ub)?);
    }
    Ok(worst)
}

fn prescribed_frame_operator(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let l = random::positive_definite(&mut ctx.rng, n, 0.5);
        let expected = herm_eig(&l)?.eigenvalues;
        let exact = frame_with_frame_operator(&l)?;
        let sized = frame_with_operator(&mut ctx.rng, &l, m)
            .map_err(|_| qframe_core::Error::InvalidShape("prescribed frame operator"))?;
        for f in [exact, sized] {
            worst = worst.max(rel(f.frame_operator().max_abs_diff(&l), l.max_abs()));
            let got = &f.spectrum()?.eigenvalues;
            for (x, y) in got.iter().zip(&expected) {
                worst = worst.max(rel_diff(*x, *y));
            }
        }
    }
    Ok(worst)
}

fn bessel_operator_correspondence(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let l = random::matrix(&mut ctx.rng, m, n);
        let family = bessel_from_operator(&l)?;
        worst = worst.max(family.analysis_matrix().max_abs_diff(&l));
    }
    Ok(worst)
}

fn file_round_trip(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in ctx.cases() {
        let f = random::frame(&mut ctx.rng, n, m);
        let text = serde_json::to_string(&FrameFile::from_frame(&f)).expect("serializes");
        let back: FrameFile = serde_json::from_str(&text).expect("parses");
        worst = worst.max(flag(back.to_frame().ok().as_ref() == Some(&f)));

        let a = random::matrix(&mut ctx.rng, n, m);
        let text = serde_json::to_string(&OperatorFile::from_matrix(&a)).expect("serializes");
        let back: OperatorFile = serde_json::from_str(&text).expect("parses");
        worst = worst.max(flag(back.to_matrix().ok().as_ref() == Some(&a)));

        let v = random::vector(&mut ctx.rng, m);
        let text = serde_json::to_string(&VectorFile::from_vector(&v)).expect("serializes");
        let back: VectorFile = serde_json::from_str(&text).expect("parses");
        worst = worst.max(flag(back.to_vector() == v));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> SuiteConfig {
        SuiteConfig {
            seed,
            sizes: vec![(1, 2), (2, 3)],
            trials: 1,
            tolerance: None,
        }
    }

    #[test]
    fn default_suite_passes() {
        let report = run_suite(&SuiteConfig::new(1));
        for c in &report.checks {
            assert!(
                c.passed,
                "{} failed: {} ({:?})",
                c.name, c.max_residual, c.error
            );
        }
        assert!(report.passed);
        assert!(report.checks.len() >= 20);
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run_suite(&small(9)), run_suite(&small(9)));
    }

    #[test]
    fn unsatisfiable_tolerance_fails() {
        let mut config = small(1);
        config.tolerance = Some(1e-30);
        let report = run_suite(&config);
        assert!(!report.passed);
        assert!(report.checks.iter().all(|c| c.tolerance == 1e-30));
    }

    #[test]
    fn names_are_unique() {
        let mut names = check_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }
}

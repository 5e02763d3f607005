//! Dense complex matrices and the two Jacobi kernels behind every
//! quaternionic spectral routine.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::math;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

const MAX_SWEEPS: usize = 80;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = CMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix shape mismatch"
        );
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + o[(i, j)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs_diff(&self, o: &CMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix shape mismatch"
        );
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| abs(*a - *b))
            .fold(0.0, f64::max)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        math::sqrt(s)
    }

    /// Applies `G` (given by its 2×2 block on columns `p`, `q`) from the right.
    fn rotate_columns(&mut self, p: usize, q: usize, g: &Rotation) {
        for k in 0..self.rows {
            let (xp, xq) = (self[(k, p)], self[(k, q)]);
            self[(k, p)] = xp * g.pp + xq * g.qp;
            self[(k, q)] = xp * g.pq + xq * g.qq;
        }
    }

    /// Applies `G*` from the left.
    fn rotate_rows(&mut self, p: usize, q: usize, g: &Rotation) {
        for k in 0..self.cols {
            let (xp, xq) = (self[(p, k)], self[(q, k)]);
            self[(p, k)] = g.pp.conj() * xp + g.qp.conj() * xq;
            self[(q, k)] = g.pq.conj() * xp + g.qq.conj() * xq;
        }
    }

    fn permute_columns(&self, order: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, order.len(), |i, j| self[(i, order[j])])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub(crate) fn abs(z: Complex64) -> f64 {
    math::hypot(z.re, z.im)
}

/// Unitary 2×2 block `[[pp, pq], [qp, qq]]` that diagonalises the Hermitian
/// block `[[app, apq], [conj(apq), aqq]]` under `G* · A · G`.
struct Rotation {
    pp: Complex64,
    pq: Complex64,
    qp: Complex64,
    qq: Complex64,
}

impl Rotation {
    fn annihilating(app: f64, aqq: f64, apq: Complex64) -> Rotation {
        let r = abs(apq);
        // D = diag(1, e^{-iφ}) makes the off-diagonal real, then a real
        // Jacobi rotation zeroes it.
        let phase = apq / r;
        let theta = (aqq - app) / (2.0 * r);
        let t = if theta >= 0.0 {
            1.0 / (theta + math::sqrt(1.0 + theta * theta))
        } else {
            -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
        };
        let c = 1.0 / math::sqrt(1.0 + t * t);
        let s = t * c;
        let d = phase.conj();
        Rotation {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: d * (-s),
            qq: d * c,
        }
    }
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
///
/// Returns eigenvalues in descending order and the unitary matrix whose
/// columns are the matching eigenvectors. Only the Hermitian part of `a`
/// is meaningful; the caller is responsible for checking Hermiticity.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert_eq!(a.rows, a.cols, "matrix must be square");
    let n = a.rows;
    let mut a = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            if a.off_diagonal_norm() <= 1e-16 * scale {
                break;
            }
            for p in 0..n.saturating_sub(1) {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if abs(apq) <= 1e-300 {
                        continue;
                    }
                    let g = Rotation::annihilating(a[(p, p)].re, a[(q, q)].re, apq);
                    a.rotate_columns(p, q, &g);
                    a.rotate_rows(p, q, &g);
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    a[(p, p)].im = 0.0;
                    a[(q, q)].im = 0.0;
                    v.rotate_columns(p, q, &g);
                }
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let order = descending_order(&values);
    (
        order.iter().map(|&i| values[i]).collect(),
        v.permute_columns(&order),
    )
}

/// Output of [`one_sided_svd`].
#[derive(Clone, Debug)]
pub struct ComplexSvd {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// `rows × k` with unit columns where the singular value is nonzero,
    /// zero columns elsewhere (`k = min(rows, cols)`).
    pub u: CMatrix,
    /// `cols × cols` unitary (when `rows ≥ cols`).
    pub v: CMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Requires `rows >= cols`; orthogonalises the columns of `a·V` by plane
/// rotations accumulated into `V`.
pub fn one_sided_svd(a: &CMatrix) -> ComplexSvd {
    assert!(a.rows >= a.cols, "one_sided_svd needs rows >= cols");
    let n = a.cols;
    let mut w = a.clone();
    let mut v = CMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                for k in 0..w.rows {
                    let (x, y) = (w[(k, p)], w[(k, q)]);
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g_abs = abs(gamma);
                if g_abs <= 1e-300 || g_abs <= 1e-15 * math::sqrt(alpha * beta) {
                    continue;
                }
                let g = Rotation::annihilating(alpha, beta, gamma);
                w.rotate_columns(p, q, &g);
                v.rotate_columns(p, q, &g);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n)
        .map(|j| math::sqrt((0..w.rows).map(|i| w[(i, j)].norm_sqr()).sum()))
        .collect();
    let order = descending_order(&norms);
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = CMatrix::from_fn(w.rows, n, |i, j| {
        let s = singular_values[j];
        if s > 0.0 {
            w[(i, order[j])] / s
        } else {
            ZERO
        }
    });
    ComplexSvd {
        singular_values,
        u,
        v: v.permute_columns(&order),
    }
}

/// Singular values of any complex matrix, descending, `min(rows, cols)` of them.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.rows >= a.cols {
        one_sided_svd(a).singular_values
    } else {
        one_sided_svd(&a.adjoint()).singular_values
    }
}

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use super::complex::CMatrix;
use super::vector::{check_len, QVector};
use crate::error::{Error, Result};
use crate::math;
use crate::quaternion::Quaternion;

/// Dense `rows × cols` quaternionic matrix, row-major.
///
/// Acts on column vectors by left multiplication, so `M(u·q) = (M u)·q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        check_len("matrix data", rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_len("matrix row", c, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`; all columns must share `rows`.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        for c in columns {
            check_len("matrix column", rows, c.len())?;
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i]))
    }

    pub fn from_diag(diag: &[Quaternion]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { Quaternion::ZERO })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Quaternion::real(diag[i])
            } else {
                Quaternion::ZERO
            }
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Quaternion] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Sub-matrix made of the columns in `range`.
    pub fn column_range(&self, range: core::ops::Range<usize>) -> QMatrix {
        let start = range.start;
        QMatrix::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `(M u)ᵢ = Σₖ Mᵢₖ uₖ`, in that factor order.
    pub fn matvec(&self, u: &QVector) -> Result<QVector> {
        check_len("matvec", self.cols, u.len())?;
        Ok(self.matvec_unchecked(u))
    }

    pub(crate) fn matvec_unchecked(&self, u: &QVector) -> QVector {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(u.iter()).map(|(a, b)| *a * *b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        check_len("matmul", self.cols, other.rows)?;
        Ok(self.matmul_unchecked(other))
    }

    pub(crate) fn matmul_unchecked(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| q * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|q| q.norm_sqr()).sum())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.modulus()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M*`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).modulus());
            }
        }
        dev
    }

    /// Accepts `self` as Hermitian when every entry of `M - M*` is within
    /// `rel_tol·‖M‖_F`.
    pub fn check_hermitian(&self, rel_tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let dev = self.hermitian_deviation();
        let allowed = rel_tol * self.frobenius_norm();
        if dev > allowed {
            return Err(Error::NotHermitian {
                deviation: dev,
                allowed,
            });
        }
        Ok(())
    }

    /// `(M + M*)/2`
    pub fn hermitian_part(&self) -> QMatrix {
        debug_assert!(self.is_square());
        QMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Complex-adjoint representation.
    ///
    /// With `M = A + B·j` split entrywise, returns `[[A, B], [-conj(B), conj(A)]]`.
    /// Paired with [`embed_vector`], `χ(M)·embed(u) = embed(M u)`.
    pub fn complex_adjoint(&self) -> CMatrix {
        let (m, n) = self.shape();
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let (a, b) = self[(i, j)].to_complex_pair();
                out[(i, j)] = a;
                out[(i, n + j)] = b;
                out[(m + i, j)] = -b.conj();
                out[(m + i, n + j)] = a.conj();
            }
        }
        out
    }
}

/// `u = a + b·j  ↦  (a, -conj(b))`, the column embedding matching `χ`.
pub fn embed_vector(u: &QVector) -> Vec<Complex64> {
    let n = u.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, q) in u.iter().enumerate() {
        let (a, b) = q.to_complex_pair();
        out[i] = a;
        out[n + i] = -b.conj();
    }
    out
}

/// Inverse of [`embed_vector`]; `x.len()` must be even.
pub fn unembed_vector(x: &[Complex64]) -> QVector {
    let n = x.len() / 2;
    (0..n)
        .map(|i| Quaternion::from_complex_pair(x[i], -x[n + i].conj()))
        .collect()
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), o.shape(), "matrix shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), o.shape(), "matrix shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

/// Panics on shape mismatch; use [`QMatrix::matmul`] for a checked product.
impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        self.matmul_unchecked(o)
    }
}

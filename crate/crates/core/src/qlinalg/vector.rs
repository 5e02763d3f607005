use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Neg, Sub};

use crate::error::{Error, Result};
use crate::math;
use crate::quaternion::Quaternion;

/// A column vector in the right ℍ-module ℍⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Quaternion::ZERO; n])
    }

    /// Standard basis vector `e_k` of ℍⁿ.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| Quaternion::real(x)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Quaternion> {
        self.entries
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Quaternion> {
        self.entries.iter()
    }

    /// Hermitian product `⟨self|other⟩ = Σ conj(selfᵢ)·otherᵢ`.
    ///
    /// Conjugate-linear in `self`, right-linear in `other`.
    pub fn inner(&self, other: &QVector) -> Result<Quaternion> {
        check_len("inner", self.len(), other.len())?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &QVector) -> Quaternion {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * *b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    /// Right scalar multiplication `u·q`.
    pub fn mul_right(&self, q: Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|&a| a * q).collect())
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector::new(self.entries.iter().map(|&a| a * s).collect())
    }

    /// `self += other·q`
    pub(crate) fn add_mul_right(&mut self, other: &QVector, q: Quaternion) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += *b * q;
        }
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &QVector) -> f64 {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.entries[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.entries[i]
    }
}

impl From<Vec<Quaternion>> for QVector {
    fn from(entries: Vec<Quaternion>) -> Self {
        Self::new(entries)
    }
}

impl FromIterator<Quaternion> for QVector {
    fn from_iter<I: IntoIterator<Item = Quaternion>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> Add<&'a QVector> for &'a QVector {
    type Output = QVector;
    fn add(self, o: &QVector) -> QVector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| *a + *b)
            .collect()
    }
}

impl<'a> Sub<&'a QVector> for &'a QVector {
    type Output = QVector;
    fn sub(self, o: &QVector) -> QVector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        self.entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| *a - *b)
            .collect()
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.entries.iter().map(|&a| -a).collect()
    }
}

pub(crate) fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}

//! Scalar quaternion algebra.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Below this modulus `inverse` refuses to divide.
pub const ZERO_THRESHOLD: f64 = 1e-300;

/// A quaternion `a0 + a1·i + a2·j + a3·k` with `ij = k`, `jk = i`, `ki = j`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self { a0, a1, a2, a3 }
    }

    #[inline]
    pub const fn real(a0: f64) -> Self {
        Self::new(a0, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// Negates the imaginary part.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// `|q|²`, computed as a plain sum of squares.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        math::hypot(math::hypot(self.a0, self.a1), math::hypot(self.a2, self.a3))
    }

    /// `q⁻¹ = q̄ / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let m = self.modulus();
        if m < ZERO_THRESHOLD {
            return Err(Error::DivisionByZero);
        }
        // Scale through the modulus twice so that |q|² cannot underflow.
        Ok((self.conj() / m) / m)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.a0.is_finite() && self.a1.is_finite() && self.a2.is_finite() && self.a3.is_finite()
    }

    /// Cayley–Dickson split `q = z₁ + z₂·j` with `z₁ = a0 + a1 i`, `z₂ = a2 + a3 i`.
    ///
    /// Every complex embedding in this crate uses this one convention.
    #[inline]
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a0, self.a1),
            Complex64::new(self.a2, self.a3),
        )
    }

    #[inline]
    pub fn from_complex_pair(z1: Complex64, z2: Complex64) -> Self {
        Self::new(z1.re, z1.im, z2.re, z2.im)
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.a0.abs().max(d.a1.abs()).max(d.a2.abs()).max(d.a3.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.a0, self.a1, self.a2, self.a3
        )
    }
}

impl From<f64> for Quaternion {
    fn from(a0: f64) -> Self {
        Self::real(a0)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(
            self.a0 + o.a0,
            self.a1 + o.a1,
            self.a2 + o.a2,
            self.a3 + o.a3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.a0 - o.a0,
            self.a1 - o.a1,
            self.a2 - o.a2,
            self.a3 - o.a3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.a0 / s, self.a1 / s, self.a2 / s, self.a3 / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl core::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

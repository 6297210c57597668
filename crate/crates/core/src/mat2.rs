//! Minimal 2x2 complex matrix arithmetic.
//!
//! Everything in this crate lives in the two-dimensional chirality space of a
//! single lattice site, so a fixed-size matrix with value semantics is all we
//! need.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

/// Complex amplitude pair `(left, right)` at one site.
pub type Spinor = [C64; 2];

/// A 2x2 complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Mat2::default()
    }

    pub fn identity() -> Self {
        Mat2::new(C64::new(1.0, 0.0), C64::ZERO, C64::ZERO, C64::new(1.0, 0.0))
    }

    /// Rank-one product `col * row^T`.
    pub fn outer(col: Spinor, row: Spinor) -> Self {
        Mat2::new(col[0] * row[0], col[0] * row[1], col[1] * row[0], col[1] * row[1])
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.0[0][0].conj(),
            self.0[1][0].conj(),
            self.0[0][1].conj(),
            self.0[1][1].conj(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(self.0[0][0] * s, self.0[0][1] * s, self.0[1][0] * s, self.0[1][1] * s)
    }

    pub fn apply(&self, v: Spinor) -> Spinor {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Deviation from unitarity, `max |M^dagger M - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.0[0][0] + rhs.0[0][0],
            self.0[0][1] + rhs.0[0][1],
            self.0[1][0] + rhs.0[1][0],
            self.0[1][1] + rhs.0[1][1],
        )
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        *self = *self + rhs;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.0[0][0] - rhs.0[0][0],
            self.0[0][1] - rhs.0[0][1],
            self.0[1][0] - rhs.0[1][0],
            self.0[1][1] - rhs.0[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Squared Euclidean norm of an amplitude pair.
pub fn spinor_norm_sq(v: &Spinor) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

//! Truncated power series over the complex numbers.
//!
//! Generating functions in this crate are built from finitely many Mobius
//! steps, so their Taylor coefficients up to a fixed order can be computed
//! exactly with truncated series arithmetic. All operations keep a fixed
//! truncation order: a series holds coefficients of `z^0 .. z^order`.

use crate::error::{Error, Result};
use crate::mat2::C64;

/// Coefficients `c[k]` of `sum c[k] z^k`, truncated at a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<C64>,
}

impl PowerSeries {
    /// Zero series truncated at `order` (holds `order + 1` coefficients).
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![C64::ZERO; order + 1] }
    }

    pub fn constant(c: C64, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c z^k` (zero if `k` exceeds the order).
    pub fn monomial(c: C64, k: usize, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(C64::ZERO)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.coeffs.len();
        let mut out = vec![C64::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == C64::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplication by `z^k` (drops the top `k` coefficients).
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C64::ZERO; n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i];
        }
        PowerSeries { coeffs: out }
    }

    /// Long division; errors when the divisor's constant term vanishes.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other);
        let d0 = other.coeffs[0];
        if d0.norm() < 1e-300 {
            return Err(Error::Series("division by series with zero constant term".into()));
        }
        let n = self.coeffs.len();
        let mut out = vec![C64::ZERO; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for i in 0..k {
                acc -= out[i] * other.coeffs[k - i];
            }
            out[k] = acc / d0;
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Horner evaluation of the truncated polynomial at `z`.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::ZERO, |acc, &c| acc * z + c)
    }
}

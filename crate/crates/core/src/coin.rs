//! Coin parameter sequences and the local coin matrices they generate.
//!
//! A walk is specified by a complex parameter `gamma_j` per site with
//! `|gamma_j| <= 1`; `|gamma_j|^2` is the reflection strength at site `j`.
//! The site coin is
//!
//! ```text
//! H(gamma) = [ rho   conj(gamma) ]        rho = sqrt(1 - |gamma|^2)
//!            [ -gamma        rho ]
//! ```

use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};

/// Rule mapping a site index to its coin parameter.
#[derive(Clone, Debug)]
pub enum CoinSequence {
    /// `gamma_j = 1/(r + j)` for `j >= 0` (transparent at infinity), `0` for `j < 0`.
    PowerLaw { r: f64 },
    /// The same parameter at every site.
    Homogeneous { gamma: C64 },
    /// Transparent coins everywhere (free walk).
    Zero,
    /// Explicit parameters on `offset..offset + gammas.len()`, zero elsewhere.
    Explicit { offset: i64, gammas: Vec<C64> },
    /// Interleaving used by the half-line/line correspondence: parameter of the
    /// inner sequence at even sites, zero at odd sites except `gamma_{-1} = -1`.
    Doubled { inner: Box<CoinSequence> },
}

impl CoinSequence {
    pub fn power_law(r: f64) -> Result<Self> {
        if !(r > 1.0) {
            return Err(Error::Invalid(format!("power-law parameter r = {r} must exceed 1")));
        }
        Ok(CoinSequence::PowerLaw { r })
    }

    pub fn homogeneous(gamma: C64) -> Result<Self> {
        if gamma.norm() >= 1.0 {
            return Err(Error::CoinOutOfRange { magnitude: gamma.norm() });
        }
        Ok(CoinSequence::Homogeneous { gamma })
    }

    /// Explicit list starting at site `offset`. Magnitude 1 is accepted here
    /// because boundary coins (e.g. the doubled sequence) need it; walk and
    /// CMV constructors re-validate interior sites.
    pub fn explicit(offset: i64, gammas: Vec<C64>) -> Result<Self> {
        for g in &gammas {
            if g.norm() > 1.0 + 1e-14 {
                return Err(Error::CoinOutOfRange { magnitude: g.norm() });
            }
        }
        Ok(CoinSequence::Explicit { offset, gammas })
    }

    pub fn doubled(inner: CoinSequence) -> Self {
        CoinSequence::Doubled { inner: Box::new(inner) }
    }

    /// Coin parameter at site `j`.
    pub fn gamma(&self, j: i64) -> C64 {
        match self {
            CoinSequence::PowerLaw { r } => {
                if j >= 0 {
                    C64::new(1.0 / (r + j as f64), 0.0)
                } else {
                    C64::ZERO
                }
            }
            CoinSequence::Homogeneous { gamma } => *gamma,
            CoinSequence::Zero => C64::ZERO,
            CoinSequence::Explicit { offset, gammas } => {
                let idx = j - offset;
                if idx >= 0 && (idx as usize) < gammas.len() {
                    gammas[idx as usize]
                } else {
                    C64::ZERO
                }
            }
            CoinSequence::Doubled { inner } => {
                if j % 2 == 0 {
                    inner.gamma(j / 2)
                } else if j == -1 {
                    C64::new(-1.0, 0.0)
                } else {
                    C64::ZERO
                }
            }
        }
    }

    /// `rho_j = sqrt(1 - |gamma_j|^2)`.
    pub fn rho(&self, j: i64) -> f64 {
        rho_of(self.gamma(j))
    }

    /// An index below which every parameter vanishes, when one is known.
    pub fn zero_below(&self) -> Option<i64> {
        match self {
            CoinSequence::PowerLaw { .. } | CoinSequence::Zero => Some(0),
            CoinSequence::Homogeneous { gamma } => {
                if gamma.norm() == 0.0 {
                    Some(0)
                } else {
                    None
                }
            }
            CoinSequence::Explicit { offset, .. } => Some(*offset),
            CoinSequence::Doubled { inner } => inner.zero_below().map(|l| (2 * l).min(-1)),
        }
    }

    /// An index above which every parameter vanishes, when one is known.
    pub fn zero_above(&self) -> Option<i64> {
        match self {
            CoinSequence::Zero => Some(0),
            CoinSequence::Explicit { offset, gammas } => Some(offset + gammas.len() as i64 - 1),
            CoinSequence::Homogeneous { gamma } => {
                if gamma.norm() == 0.0 {
                    Some(0)
                } else {
                    None
                }
            }
            CoinSequence::Doubled { inner } => inner.zero_above().map(|u| 2 * u),
            CoinSequence::PowerLaw { .. } => None,
        }
    }
}

pub fn rho_of(gamma: C64) -> f64 {
    (1.0 - gamma.norm_sqr()).max(0.0).sqrt()
}

/// Unitary site coin built from a single parameter.
#[derive(Clone, Copy, Debug)]
pub struct CoinMatrix(pub Mat2);

/// `H(gamma)`; errors when `|gamma| > 1`.
pub fn build_coin(gamma: C64) -> Result<CoinMatrix> {
    if gamma.norm() > 1.0 + 1e-14 {
        return Err(Error::CoinOutOfRange { magnitude: gamma.norm() });
    }
    let rho = C64::new(rho_of(gamma), 0.0);
    Ok(CoinMatrix(Mat2::new(rho, gamma.conj(), -gamma, rho)))
}

/// The row-split pieces of a site coin used by the passage-weight recursion:
/// `P` keeps the top (leftward) row, `Q` the bottom (rightward) row, and
/// `R`, `S` are their row-swapped variants entering first-return weights.
#[derive(Clone, Copy, Debug)]
pub struct LocalMatrices {
    pub p: Mat2,
    pub q: Mat2,
    pub r: Mat2,
    pub s: Mat2,
}

pub fn local_matrices(gamma: C64) -> LocalMatrices {
    let rho = C64::new(rho_of(gamma), 0.0);
    let zero = C64::ZERO;
    LocalMatrices {
        p: Mat2::new(rho, gamma.conj(), zero, zero),
        q: Mat2::new(zero, zero, -gamma, rho),
        r: Mat2::new(-gamma, rho, zero, zero),
        s: Mat2::new(zero, zero, rho, gamma.conj()),
    }
}

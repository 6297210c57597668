//! Generating functions of passage weights.
//!
//! The central objects are the `g`-functions: continued fractions built from
//! the coin parameters by the Mobius recursions
//!
//! ```text
//! g+_j = z^2 (conj(g_{j+1}) + g+_{j+1}) / (1 + g_{j+1} g+_{j+1})
//! g-_j = z^2 (g-_{j-1} - g_{j-1})      / (1 - conj(g_{j-1}) g-_{j-1})
//! ```
//!
//! (`g_j` denotes the coin parameter here). From them the full generating
//! function `Xi~_j(z) = sum_n Xi_n(j) z^n` is assembled in closed form: a
//! boundary matrix at the origin and a product of scalar transfer factors
//! `lambda` for the interior. Everything is available both as point
//! evaluation in the open unit disk and as truncated power series, whose
//! coefficients reproduce the walk recursion exactly.

use crate::coin::{local_matrices, rho_of, CoinSequence};
use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};
use crate::series::PowerSeries;
use crate::walk::{effective_gamma, WalkKind};

/// Default cap on the continued-fraction depth used by adaptive evaluation.
pub const DEFAULT_MAX_DEPTH: usize = 1 << 16;

/// One downward step of the plus-side recursion (`gamma` is the parameter at
/// the site above the target).
pub fn plus_step(gamma: C64, g_above: C64, z: C64) -> Result<C64> {
    let den = C64::new(1.0, 0.0) + gamma * g_above;
    if den.norm() < 1e-14 {
        return Err(Error::Singular("1 + gamma*g vanished in plus recursion".into()));
    }
    Ok(z * z * (gamma.conj() + g_above) / den)
}

/// One upward step of the minus-side recursion (`gamma` is the parameter at
/// the site below the target).
pub fn minus_step(gamma: C64, g_below: C64, z: C64) -> Result<C64> {
    let den = C64::new(1.0, 0.0) - gamma.conj() * g_below;
    if den.norm() < 1e-14 {
        return Err(Error::Singular("1 - conj(gamma)*g vanished in minus recursion".into()));
    }
    Ok(z * z * (g_below - gamma) / den)
}

/// Smallest-modulus root of `a g^2 + b g + c = 0` (linear when `a ~ 0`).
pub(crate) fn small_root(a: C64, b: C64, c: C64) -> C64 {
    if a.norm() < 1e-15 {
        return -c / b;
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    let r1 = (-b + disc) / (2.0 * a);
    let r2 = (-b - disc) / (2.0 * a);
    if r1.norm() <= r2.norm() {
        r1
    } else {
        r2
    }
}

/// Evaluator for the generating functions of one walk.
#[derive(Clone, Debug)]
pub struct GenFun {
    kind: WalkKind,
    coins: CoinSequence,
    max_depth: usize,
    tol: f64,
}

impl GenFun {
    pub fn new(kind: WalkKind, coins: CoinSequence) -> Self {
        GenFun { kind, coins, max_depth: DEFAULT_MAX_DEPTH, tol: 1e-13 }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth.max(2);
        self
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn coins(&self) -> &CoinSequence {
        &self.coins
    }

    fn gamma(&self, j: i64) -> C64 {
        effective_gamma(self.kind, &self.coins, j)
    }

    /// Exact value of `g+_J(z)` when the model admits one: closed form for
    /// the power-law sequence, Mobius fixed point for homogeneous coins,
    /// zero beyond finite support.
    fn tail_seed_plus(&self, j: i64, z: C64) -> Option<C64> {
        if let Some(u) = self.coins.zero_above() {
            if j >= u {
                return Some(C64::ZERO);
            }
        }
        match &self.coins {
            CoinSequence::PowerLaw { r } if j >= 0 => {
                let z2 = z * z;
                Some(z2 / (C64::new(r + 1.0 + j as f64, 0.0) - (r + j as f64) * z2))
            }
            CoinSequence::Homogeneous { gamma } => {
                // Fixed point of g = z^2 (conj(gamma) + g)/(1 + gamma g).
                let z2 = z * z;
                Some(small_root(*gamma, C64::new(1.0, 0.0) - z2, -z2 * gamma.conj()))
            }
            _ => None,
        }
    }

    /// Exact value of `g-_J(z)` when the model admits one.
    fn tail_seed_minus(&self, j: i64, z: C64) -> Option<C64> {
        if let Some(l) = self.coins.zero_below() {
            if j <= l {
                return Some(C64::ZERO);
            }
        }
        match &self.coins {
            CoinSequence::Homogeneous { gamma } => {
                // Fixed point of g = z^2 (g - gamma)/(1 - conj(gamma) g).
                let z2 = z * z;
                Some(small_root(gamma.conj(), z2 - C64::new(1.0, 0.0), -z2 * gamma))
            }
            _ => None,
        }
    }

    /// `g+_j(z)` by downward recursion from an explicit seed value placed at
    /// site `j + depth`.
    pub fn g_plus_from_seed(&self, j: i64, z: C64, depth: usize, seed: C64) -> Result<C64> {
        let top = j + depth as i64;
        let mut g = seed;
        for k in (j..top).rev() {
            g = plus_step(self.gamma(k + 1), g, z)?;
        }
        Ok(g)
    }

    /// `g+_j(z)` at a fixed depth, seeded with the model's exact tail value
    /// when one is known (zero otherwise).
    pub fn g_plus_at_depth(&self, j: i64, z: C64, depth: usize) -> Result<C64> {
        let seed = self.tail_seed_plus(j + depth as i64, z).unwrap_or(C64::ZERO);
        self.g_plus_from_seed(j, z, depth, seed)
    }

    /// `g-_j(z)` by upward recursion from an explicit seed value placed at
    /// site `j - depth`.
    pub fn g_minus_from_seed(&self, j: i64, z: C64, depth: usize, seed: C64) -> Result<C64> {
        let bottom = j - depth as i64;
        let mut g = seed;
        for k in bottom..j {
            g = minus_step(self.gamma(k), g, z)?;
        }
        Ok(g)
    }

    /// `g-_j(z)` at a fixed depth with the model's best tail seed.
    pub fn g_minus_at_depth(&self, j: i64, z: C64, depth: usize) -> Result<C64> {
        let seed = self.tail_seed_minus(j - depth as i64, z).unwrap_or(C64::ZERO);
        self.g_minus_from_seed(j, z, depth, seed)
    }

    fn adaptive<F>(&self, eval: F, what: &str) -> Result<C64>
    where
        F: Fn(usize) -> Result<C64>,
    {
        let mut depth = 32usize;
        let mut prev: Option<C64> = None;
        while depth <= self.max_depth {
            let v = eval(depth)?;
            if let Some(p) = prev {
                if (v - p).norm() <= self.tol * v.norm().max(1.0) {
                    return Ok(v);
                }
            }
            prev = Some(v);
            depth *= 2;
        }
        Err(Error::NonConvergent(format!("{what} did not settle below depth {}", self.max_depth)))
    }

    /// `g+_j(z)`, depth chosen adaptively (doubling until two successive
    /// evaluations agree).
    pub fn g_plus(&self, j: i64, z: C64) -> Result<C64> {
        self.adaptive(|d| self.g_plus_at_depth(j, z, d), "g_plus")
    }

    /// `g-_j(z)`, depth chosen adaptively.
    pub fn g_minus(&self, j: i64, z: C64) -> Result<C64> {
        self.adaptive(|d| self.g_minus_at_depth(j, z, d), "g_minus")
    }

    /// Transfer factor `lambda+_k = z rho_k / (1 + gamma_k g+_k)`.
    pub fn lambda_plus(&self, k: i64, z: C64) -> Result<C64> {
        let gk = self.gamma(k);
        let den = C64::new(1.0, 0.0) + gk * self.g_plus(k, z)?;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("lambda+ denominator vanished".into()));
        }
        Ok(z * rho_of(gk) / den)
    }

    /// Transfer factor `lambda-_k = z rho_k / (1 - conj(gamma_k) g-_k)`.
    pub fn lambda_minus(&self, k: i64, z: C64) -> Result<C64> {
        let gk = self.gamma(k);
        let den = C64::new(1.0, 0.0) - gk.conj() * self.g_minus(k, z)?;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("lambda- denominator vanished".into()));
        }
        Ok(z * rho_of(gk) / den)
    }

    /// First-return generating function toward larger sites:
    /// `F~+_j = g+_j R_j`, plus the self-loop term `z S_0` at the origin of
    /// the first-kind walk.
    pub fn first_return_plus(&self, j: i64, z: C64) -> Result<Mat2> {
        let lm = local_matrices(self.gamma(j));
        let mut f = lm.r.scale(self.g_plus(j, z)?);
        if self.kind == WalkKind::H1 && j == 0 {
            f += lm.s.scale(z);
        }
        Ok(f)
    }

    /// First-return generating function toward smaller sites:
    /// `F~-_j = g-_j S_j`.
    pub fn first_return_minus(&self, j: i64, z: C64) -> Result<Mat2> {
        let lm = local_matrices(self.gamma(j));
        Ok(lm.s.scale(self.g_minus(j, z)?))
    }

    /// Origin generating function `Xi~_0(z)`, one closed form per walk kind.
    pub fn xi_tilde_0(&self, z: C64) -> Result<Mat2> {
        let one = C64::new(1.0, 0.0);
        let g0 = self.gamma(0);
        let rho0 = C64::new(rho_of(g0), 0.0);
        match self.kind {
            WalkKind::H1 => {
                let gp = self.g_plus(0, z)?;
                let den = one - g0.conj() * z + (g0 - z) * gp;
                if den.norm() < 1e-14 {
                    return Err(Error::Singular("Xi~_0 denominator vanished (H1)".into()));
                }
                Ok(Mat2::new(one - g0.conj() * z, rho0 * gp, rho0 * z, one + g0 * gp)
                    .scale(one / den))
            }
            WalkKind::H2 => {
                let gp = self.g_plus(0, z)?;
                let den = one - gp;
                if den.norm() < 1e-14 {
                    return Err(Error::Singular("Xi~_0 denominator vanished (H2)".into()));
                }
                Ok(Mat2::new(one / den, C64::ZERO, C64::ZERO, one))
            }
            WalkKind::D => {
                let gp = self.g_plus(0, z)?;
                let gm = self.g_minus(0, z)?;
                let den = one + g0 * gp - g0.conj() * gm - gp * gm;
                if den.norm() < 1e-14 {
                    return Err(Error::Singular("Xi~_0 denominator vanished (D)".into()));
                }
                Ok(Mat2::new(one - g0.conj() * gm, rho0 * gp, rho0 * gm, one + g0 * gp)
                    .scale(one / den))
            }
        }
    }

    /// Full generating function `Xi~_j(z)` at any site.
    pub fn xi_tilde(&self, j: i64, z: C64) -> Result<Mat2> {
        let x0 = self.xi_tilde_0(z)?;
        if j == 0 {
            return Ok(x0);
        }
        let g0 = self.gamma(0);
        let rho0 = C64::new(rho_of(g0), 0.0);
        if j >= 1 {
            let mut pref = C64::new(1.0, 0.0);
            for k in 1..j {
                pref *= self.lambda_plus(k, z)?;
            }
            let col = [self.lambda_plus(j, z)? * self.g_plus(j, z)?, z];
            let row = [-g0, rho0];
            Ok((Mat2::outer(col, row) * x0).scale(pref))
        } else {
            if self.kind.is_half_line() {
                return Err(Error::Invalid("negative site on a half-line walk".into()));
            }
            let mut pref = C64::new(1.0, 0.0);
            for k in (j + 1)..=-1 {
                pref *= self.lambda_minus(k, z)?;
            }
            let col = [z, self.lambda_minus(j, z)? * self.g_minus(j, z)?];
            let row = [rho0, g0.conj()];
            Ok((Mat2::outer(col, row) * x0).scale(pref))
        }
    }

    // ------------------------------------------------------------------
    // Truncated power-series versions. A zero tail seed placed order/2 + 1
    // sites beyond the target is exact: each recursion step carries a z^2
    // factor, so the seed error cannot reach degrees <= order.
    // ------------------------------------------------------------------

    fn plus_step_series(&self, gamma: C64, g_above: &PowerSeries) -> Result<PowerSeries> {
        let order = g_above.order();
        let num = PowerSeries::constant(gamma.conj(), order).add(g_above).shift(2);
        let den = PowerSeries::constant(C64::new(1.0, 0.0), order).add(&g_above.scale(gamma));
        num.div(&den)
    }

    fn minus_step_series(&self, gamma: C64, g_below: &PowerSeries) -> Result<PowerSeries> {
        let order = g_below.order();
        let num = g_below.sub(&PowerSeries::constant(gamma, order)).shift(2);
        let den = PowerSeries::constant(C64::new(1.0, 0.0), order)
            .sub(&g_below.scale(gamma.conj()));
        num.div(&den)
    }

    /// Taylor coefficients of `g+_j` up to `order` (exact to roundoff).
    pub fn g_plus_series(&self, j: i64, order: usize) -> Result<PowerSeries> {
        let depth = order as i64 / 2 + 2;
        let mut g = PowerSeries::zero(order);
        for k in (j..j + depth).rev() {
            g = self.plus_step_series(self.gamma(k + 1), &g)?;
        }
        Ok(g)
    }

    /// Taylor coefficients of `g-_j` up to `order` (exact to roundoff).
    pub fn g_minus_series(&self, j: i64, order: usize) -> Result<PowerSeries> {
        let depth = order as i64 / 2 + 2;
        let mut g = PowerSeries::zero(order);
        for k in (j - depth)..j {
            g = self.minus_step_series(self.gamma(k), &g)?;
        }
        Ok(g)
    }

    fn lambda_plus_series(&self, k: i64, order: usize) -> Result<PowerSeries> {
        let gk = self.gamma(k);
        let den = PowerSeries::constant(C64::new(1.0, 0.0), order)
            .add(&self.g_plus_series(k, order)?.scale(gk));
        PowerSeries::monomial(C64::new(rho_of(gk), 0.0), 1, order).div(&den)
    }

    fn lambda_minus_series(&self, k: i64, order: usize) -> Result<PowerSeries> {
        let gk = self.gamma(k);
        let den = PowerSeries::constant(C64::new(1.0, 0.0), order)
            .sub(&self.g_minus_series(k, order)?.scale(gk.conj()));
        PowerSeries::monomial(C64::new(rho_of(gk), 0.0), 1, order).div(&den)
    }

    fn xi_tilde_0_series(&self, order: usize) -> Result<MatrixSeries> {
        let one = PowerSeries::constant(C64::new(1.0, 0.0), order);
        let zser = PowerSeries::monomial(C64::new(1.0, 0.0), 1, order);
        let g0 = self.gamma(0);
        let rho0 = C64::new(rho_of(g0), 0.0);
        match self.kind {
            WalkKind::H1 => {
                let gp = self.g_plus_series(0, order)?;
                let a = one.sub(&zser.scale(g0.conj()));
                let d = one.add(&gp.scale(g0));
                let den = a.add(&gp.scale(g0)).sub(&gp.mul(&zser)); // 1 - conj(g0)z + (g0 - z)g+
                Ok(MatrixSeries {
                    entries: [
                        [a.div(&den)?, gp.scale(rho0).div(&den)?],
                        [zser.scale(rho0).div(&den)?, d.div(&den)?],
                    ],
                })
            }
            WalkKind::H2 => {
                let gp = self.g_plus_series(0, order)?;
                let den = one.sub(&gp);
                Ok(MatrixSeries {
                    entries: [
                        [one.div(&den)?, PowerSeries::zero(order)],
                        [PowerSeries::zero(order), one.clone()],
                    ],
                })
            }
            WalkKind::D => {
                let gp = self.g_plus_series(0, order)?;
                let gm = self.g_minus_series(0, order)?;
                let a = one.sub(&gm.scale(g0.conj()));
                let d = one.add(&gp.scale(g0));
                let den = d.sub(&gm.scale(g0.conj())).sub(&gp.mul(&gm));
                Ok(MatrixSeries {
                    entries: [
                        [a.div(&den)?, gp.scale(rho0).div(&den)?],
                        [gm.scale(rho0).div(&den)?, d.div(&den)?],
                    ],
                })
            }
        }
    }

    /// Taylor coefficients of `Xi~_j(z)` up to degree `order`; coefficient
    /// `n` equals the passage weight `Xi_n(j)`.
    pub fn xi_series(&self, j: i64, order: usize) -> Result<MatrixSeries> {
        let x0 = self.xi_tilde_0_series(order)?;
        if j == 0 {
            return Ok(x0);
        }
        let g0 = self.gamma(0);
        let rho0 = C64::new(rho_of(g0), 0.0);
        let zser = PowerSeries::monomial(C64::new(1.0, 0.0), 1, order);
        let (col, row): ([PowerSeries; 2], [C64; 2]) = if j >= 1 {
            let mut pref = PowerSeries::constant(C64::new(1.0, 0.0), order);
            for k in 1..j {
                pref = pref.mul(&self.lambda_plus_series(k, order)?);
            }
            let top = self
                .lambda_plus_series(j, order)?
                .mul(&self.g_plus_series(j, order)?)
                .mul(&pref);
            ([top, zser.mul(&pref)], [-g0, rho0])
        } else {
            if self.kind.is_half_line() {
                return Err(Error::Invalid("negative site on a half-line walk".into()));
            }
            let mut pref = PowerSeries::constant(C64::new(1.0, 0.0), order);
            for k in (j + 1)..=-1 {
                pref = pref.mul(&self.lambda_minus_series(k, order)?);
            }
            let bot = self
                .lambda_minus_series(j, order)?
                .mul(&self.g_minus_series(j, order)?)
                .mul(&pref);
            ([zser.mul(&pref), bot], [rho0, g0.conj()])
        };
        let mut entries: [[PowerSeries; 2]; 2] = [
            [PowerSeries::zero(order), PowerSeries::zero(order)],
            [PowerSeries::zero(order), PowerSeries::zero(order)],
        ];
        for i in 0..2 {
            for l in 0..2 {
                let mut acc = PowerSeries::zero(order);
                for k in 0..2 {
                    acc = acc.add(&x0.entries[k][l].scale(row[k]));
                }
                entries[i][l] = col[i].mul(&acc);
            }
        }
        Ok(MatrixSeries { entries })
    }
}

/// 2x2 grid of power series representing a matrix-valued generating function.
#[derive(Clone, Debug)]
pub struct MatrixSeries {
    pub entries: [[PowerSeries; 2]; 2],
}

impl MatrixSeries {
    pub fn order(&self) -> usize {
        self.entries[0][0].order()
    }

    /// The matrix coefficient of `z^n`.
    pub fn coeff(&self, n: usize) -> Mat2 {
        Mat2::new(
            self.entries[0][0].coeff(n),
            self.entries[0][1].coeff(n),
            self.entries[1][0].coeff(n),
            self.entries[1][1].coeff(n),
        )
    }
}

/// Residual of the half-line/line correspondence: the first-kind walk's
/// generating function at `z^2` against the line walk with the interleaved
/// coin sequence at `z`, compared entrywise at site `2j`.
pub fn doubling_check(coins: &CoinSequence, j: i64, z: C64) -> Result<f64> {
    let h1 = GenFun::new(WalkKind::H1, coins.clone());
    let d = GenFun::new(WalkKind::D, CoinSequence::doubled(coins.clone()));
    let lhs = h1.xi_tilde(j, z * z)?;
    let rhs = d.xi_tilde(2 * j, z)?;
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::passage_weights;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn power_law_g_closed(r: f64, j: i64, z: C64) -> C64 {
        z * z / (C64::new(r + 1.0 + j as f64, 0.0) - (r + j as f64) * z * z)
    }

    #[test]
    fn zero_coins_g_vanishes() {
        let gf = GenFun::new(WalkKind::D, CoinSequence::Zero);
        for j in [-3i64, 0, 4] {
            assert_eq!(gf.g_plus(j, c(0.5, 0.2)).unwrap(), C64::ZERO);
            assert_eq!(gf.g_minus(j, c(0.5, 0.2)).unwrap(), C64::ZERO);
        }
    }

    #[test]
    fn power_law_g_matches_closed_form() {
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(3.0).unwrap());
        let z = c(0.5, 0.0);
        let v = gf.g_plus(0, z).unwrap();
        assert!((v - c(1.0 / 13.0, 0.0)).norm() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let j = rng.gen_range(0..50);
            let v = gf.g_plus(j, z).unwrap();
            assert!((v - power_law_g_closed(3.0, j, z)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_tail_seed_converges_to_closed_form() {
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(3.0).unwrap());
        let z = c(0.5, 0.0);
        let v = gf.g_plus_from_seed(0, z, 200, C64::ZERO).unwrap();
        assert!((v - c(1.0 / 13.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn depth_stability_with_zero_seed() {
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(3.0).unwrap());
        let z = c(0.6, 0.3);
        let mut last_gap = f64::INFINITY;
        for depth in [8usize, 16, 32, 64] {
            let a = gf.g_plus_from_seed(0, z, depth, C64::ZERO).unwrap();
            let b = gf.g_plus_from_seed(0, z, 2 * depth, C64::ZERO).unwrap();
            let gap = (a - b).norm();
            assert!(gap <= last_gap + 1e-15);
            last_gap = gap;
        }
        assert!(last_gap < 1e-10);
    }

    #[test]
    fn homogeneous_fixed_point_seed_matches_deep_iteration() {
        let gf = GenFun::new(WalkKind::D, CoinSequence::homogeneous(c(0.4, 0.25)).unwrap());
        let z = c(0.45, -0.3);
        let plus = gf.g_plus(2, z).unwrap();
        let plus_deep = gf.g_plus_from_seed(2, z, 400, C64::ZERO).unwrap();
        assert!((plus - plus_deep).norm() < 1e-11);
        let minus = gf.g_minus(-1, z).unwrap();
        let minus_deep = gf.g_minus_from_seed(-1, z, 400, C64::ZERO).unwrap();
        assert!((minus - minus_deep).norm() < 1e-11);
    }

    #[test]
    fn first_return_origin_split() {
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(3.0).unwrap());
        let z = c(0.5, 0.0);
        let f = gf.first_return_plus(0, z).unwrap();
        let lm = local_matrices(c(1.0 / 3.0, 0.0));
        let expect = lm.r.scale(c(1.0 / 13.0, 0.0)) + lm.s.scale(z);
        assert!(f.max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn xi_tilde_0_at_zero_is_identity() {
        for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
            let gf = GenFun::new(kind, CoinSequence::power_law(3.0).unwrap());
            let m = gf.xi_tilde_0(C64::ZERO).unwrap();
            assert!(m.max_abs_diff(&Mat2::identity()) < 1e-14);
        }
    }

    #[test]
    fn series_matches_walk_recursion_power_law() {
        let order = 30;
        for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
            let coins = CoinSequence::power_law(3.0).unwrap();
            let gf = GenFun::new(kind, coins.clone());
            let weights: Vec<_> =
                (0..=order as u64).map(|n| passage_weights(n, kind, &coins)).collect();
            let range = if kind == WalkKind::D { -(order as i64)..=order as i64 } else { 0..=order as i64 };
            for j in range {
                let ser = gf.xi_series(j, order).unwrap();
                for n in 0..=order {
                    let err = ser.coeff(n).max_abs_diff(&weights[n].xi(j));
                    assert!(err < 1e-10, "kind={kind:?} j={j} n={n} err={err}");
                }
            }
        }
    }

    #[test]
    fn series_matches_walk_recursion_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let order = 20;
        for trial in 0..4 {
            let coins = CoinSequence::explicit(
                -8,
                (0..17).map(|_| c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6))).collect(),
            )
            .unwrap();
            let kind = [WalkKind::H1, WalkKind::H2, WalkKind::D][trial % 3];
            let gf = GenFun::new(kind, coins.clone());
            let weights: Vec<_> =
                (0..=order as u64).map(|n| passage_weights(n, kind, &coins)).collect();
            let range = if kind == WalkKind::D { -(order as i64)..=order as i64 } else { 0..=order as i64 };
            for j in range {
                let ser = gf.xi_series(j, order).unwrap();
                for n in 0..=order {
                    let err = ser.coeff(n).max_abs_diff(&weights[n].xi(j));
                    assert!(err < 1e-10, "kind={kind:?} j={j} n={n} err={err}");
                }
            }
        }
    }

    #[test]
    fn point_evaluation_matches_series_sum() {
        let order = 80;
        let z = c(0.35, 0.2);
        for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
            let gf = GenFun::new(kind, CoinSequence::power_law(2.0).unwrap());
            for j in [-2i64, -1, 0, 1, 3] {
                if kind.is_half_line() && j < 0 {
                    continue;
                }
                let point = gf.xi_tilde(j, z).unwrap();
                let ser = gf.xi_series(j, order).unwrap();
                let mut summed = Mat2::zero();
                for n in (0..=order).rev() {
                    summed = summed.scale(z) + ser.coeff(n);
                }
                assert!(
                    point.max_abs_diff(&summed) < 1e-9,
                    "kind={kind:?} j={j} diff={}",
                    point.max_abs_diff(&summed)
                );
            }
        }
    }

    #[test]
    fn lambda_closed_form_power_law() {
        let r = 3.0;
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(r).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let k = rng.gen_range(1..20) as i64;
            let m = r + k as f64;
            let z2 = z * z;
            let expect = z * ((m - 1.0) / (m + 1.0)).sqrt()
                * (C64::new(m + 1.0, 0.0) - m * z2)
                / (C64::new(m, 0.0) - (m - 1.0) * z2);
            assert!((gf.lambda_plus(k, z).unwrap() - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn lambda_product_telescopes() {
        // Product lambda+_j ... lambda+_1 for the power-law model, in the
        // telescoped closed form.
        let r = 3.0;
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(r).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let j = rng.gen_range(1..=20) as i64;
            let mut prod = C64::new(1.0, 0.0);
            for k in 1..=j {
                prod *= gf.lambda_plus(k, z).unwrap();
            }
            let m = r + j as f64;
            let z2 = z * z;
            let expect = z.powi(j as i32)
                * (r * (r + 1.0) / (m * (m + 1.0))).sqrt()
                * (C64::new(m + 1.0, 0.0) - m * z2)
                / (C64::new(r + 1.0, 0.0) - r * z2);
            assert!((prod - expect).norm() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn origin_denominator_rational_form() {
        // 1/(1 - conj(g_0) z + (g_0 - z) g+_0) for the power-law model equals
        // (r^2/(r^2-1)) (z^2 - (r+1)/r) / ((z - 1)(z - r/(1-r))).
        let r = 3.0;
        let gf = GenFun::new(WalkKind::H1, CoinSequence::power_law(r).unwrap());
        let t = r / (1.0 - r);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let g0 = c(1.0 / r, 0.0);
            let gp = gf.g_plus(0, z).unwrap();
            let inv_den = C64::new(1.0, 0.0)
                / (C64::new(1.0, 0.0) - g0.conj() * z + (g0 - z) * gp);
            let expect = (r * r / (r * r - 1.0))
                * (z * z - (r + 1.0) / r)
                / ((z - 1.0) * (z - t));
            assert!((inv_den - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn doubling_relation_holds() {
        let pl = CoinSequence::power_law(3.0).unwrap();
        assert!(doubling_check(&pl, 0, C64::ZERO).unwrap() < 1e-14);
        assert!(doubling_check(&pl, 2, c(0.4, 0.0)).unwrap() < 1e-10);
        let hom = CoinSequence::homogeneous(c(0.5, 0.0)).unwrap();
        assert!(doubling_check(&hom, 1, c(0.0, 0.3)).unwrap() < 1e-10);
    }
}

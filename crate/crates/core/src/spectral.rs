//! Schur algorithm, Caratheodory function, and spectral-measure recovery.
//!
//! A coin sequence doubles as a Schur parameter sequence. The Schur function
//! is evaluated by running the inverse Schur step
//!
//! ```text
//! f_k(z) = (a_k + z f_{k+1}(z)) / (1 + conj(a_k) z f_{k+1}(z))
//! ```
//!
//! downward from a tail seed. The walk's spectral measure lives on the unit
//! circle; its Caratheodory function is `F(z) = (1 + z f(z^2))/(1 - z f(z^2))`
//! (the squared argument reflects the interleaved-parameter structure of the
//! walk operator), and radial limits of `F` recover the absolutely continuous
//! weight and the point masses.

use num_complex::Complex64;

use crate::coin::CoinSequence;
use crate::error::{Error, Result};
use crate::genfun::{small_root, GenFun};
use crate::walk::WalkKind;

type C64 = Complex64;

/// How the evaluator reads parameters out of the coin sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ParamView {
    /// `a_k = gamma_k`.
    Plain,
    /// `a_k = conj(gamma_{k+1})` (plus-side bridge to the g-functions).
    ConjShift,
    /// `a_k = -gamma_{-1-k}` (minus-side bridge).
    NegReflect,
}

/// Schur-function evaluator over one parameter sequence.
#[derive(Clone, Debug)]
pub struct SchurEvaluator {
    coins: CoinSequence,
    view: ParamView,
    max_depth: usize,
    tol: f64,
}

/// One inverse (downward) Schur step.
pub fn schur_step_down(a: C64, z: C64, f_next: C64) -> C64 {
    (a + z * f_next) / (C64::new(1.0, 0.0) + a.conj() * z * f_next)
}

/// One forward Schur step, `f_{j+1}` from `f_j` (used for cross-checks).
pub fn schur_step_up(a: C64, z: C64, f: C64) -> Result<C64> {
    if z.norm() < 1e-300 {
        return Err(Error::Singular("forward Schur step at z = 0".into()));
    }
    let den = z * (C64::new(1.0, 0.0) - a.conj() * f);
    if den.norm() < 1e-14 {
        return Err(Error::Singular("forward Schur step denominator vanished".into()));
    }
    Ok((f - a) / den)
}

impl SchurEvaluator {
    pub fn new(coins: CoinSequence) -> Self {
        SchurEvaluator { coins, view: ParamView::Plain, max_depth: 1 << 16, tol: 1e-13 }
    }

    /// Parameters `conj(gamma_1), conj(gamma_2), ...` — the sequence whose
    /// Schur function matches the plus-side g-function.
    pub fn plus_bridge(coins: CoinSequence) -> Self {
        SchurEvaluator { coins, view: ParamView::ConjShift, max_depth: 1 << 16, tol: 1e-13 }
    }

    /// Parameters `-gamma_{-1}, -gamma_{-2}, ...` — the minus-side analog.
    pub fn minus_bridge(coins: CoinSequence) -> Self {
        SchurEvaluator { coins, view: ParamView::NegReflect, max_depth: 1 << 16, tol: 1e-13 }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth.max(2);
        self
    }

    /// Parameter `a_k` of the viewed sequence.
    pub fn param(&self, k: i64) -> C64 {
        match self.view {
            ParamView::Plain => self.coins.gamma(k),
            ParamView::ConjShift => self.coins.gamma(k + 1).conj(),
            ParamView::NegReflect => -self.coins.gamma(-1 - k),
        }
    }

    fn params_zero_above(&self) -> Option<i64> {
        match self.view {
            ParamView::Plain => self.coins.zero_above(),
            ParamView::ConjShift => self.coins.zero_above().map(|u| u - 1),
            ParamView::NegReflect => self.coins.zero_below().map(|l| -1 - l),
        }
    }

    /// Exact tail value `f_J(z)` when the viewed model admits one.
    fn tail_seed(&self, j: i64, z: C64) -> Option<C64> {
        if let Some(u) = self.params_zero_above() {
            if j > u {
                return Some(C64::ZERO);
            }
        }
        let fixed_point = |c: C64| -> C64 {
            // Fixed point of f = (c + z f)/(1 + conj(c) z f).
            small_root(c.conj() * z, C64::new(1.0, 0.0) - z, -c)
        };
        match (&self.coins, self.view) {
            (CoinSequence::PowerLaw { r }, ParamView::Plain) if j >= 0 => {
                // Parameters 1/(r+k): f_J = 1/(r+J - (r-1+J)z).
                Some(C64::new(1.0, 0.0) / (C64::new(r + j as f64, 0.0) - (r - 1.0 + j as f64) * z))
            }
            (CoinSequence::PowerLaw { r }, ParamView::ConjShift) if j >= 0 => {
                // Shifted parameters 1/(r+1+k).
                Some(C64::new(1.0, 0.0) / (C64::new(r + 1.0 + j as f64, 0.0) - (r + j as f64) * z))
            }
            (CoinSequence::Homogeneous { gamma }, view) => {
                let c = match view {
                    ParamView::Plain => *gamma,
                    ParamView::ConjShift => gamma.conj(),
                    ParamView::NegReflect => -*gamma,
                };
                Some(fixed_point(c))
            }
            _ => None,
        }
    }

    /// `f_j(z)` with the seed placed at index `j + depth`.
    pub fn eval_at_depth(&self, j: i64, z: C64, depth: usize) -> C64 {
        let top = j + depth as i64;
        let mut f = self.tail_seed(top, z).unwrap_or(C64::ZERO);
        for k in (j..top).rev() {
            f = schur_step_down(self.param(k), z, f);
        }
        f
    }

    /// `f_j(z)`, depth chosen adaptively.
    pub fn eval(&self, j: i64, z: C64) -> Result<C64> {
        if z.norm() > 1.0 - 1e-12 {
            return Err(Error::Invalid(format!("Schur evaluation needs |z| < 1, got {}", z.norm())));
        }
        let mut depth = 32usize;
        let mut prev: Option<C64> = None;
        while depth <= self.max_depth {
            let v = self.eval_at_depth(j, z, depth);
            if let Some(p) = prev {
                if (v - p).norm() <= self.tol {
                    return Ok(v);
                }
            }
            prev = Some(v);
            depth *= 2;
        }
        Err(Error::NonConvergent(format!(
            "Schur evaluation did not settle below depth {}",
            self.max_depth
        )))
    }
}

/// A sampled measure on the unit circle: an absolutely continuous weight on a
/// grid of angles plus a finite list of point masses.
#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
    pub masses: Vec<(f64, f64)>,
}

impl SpectralMeasure {
    /// `(1/2pi) \int w dtheta + sum of masses`, the quantity that must equal 1.
    pub fn total_mass(&self) -> f64 {
        let mean: f64 = self.weights.iter().sum::<f64>() / self.weights.len() as f64;
        mean + self.masses.iter().map(|&(_, m)| m).sum::<f64>()
    }

    pub fn normalization_residual(&self) -> f64 {
        (self.total_mass() - 1.0).abs()
    }
}

/// Spectral analysis pipeline for one coin sequence.
#[derive(Clone, Debug)]
pub struct SpectralAnalyzer {
    schur: SchurEvaluator,
}

/// Radial ladder used for boundary limits: `s_k = 1 - 2^{-k}`, `k = 10..=20`.
const LADDER: std::ops::RangeInclusive<i32> = 10..=20;

impl SpectralAnalyzer {
    pub fn new(coins: CoinSequence) -> Self {
        SpectralAnalyzer { schur: SchurEvaluator::new(coins) }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.schur = self.schur.with_max_depth(max_depth);
        self
    }

    pub fn schur(&self) -> &SchurEvaluator {
        &self.schur
    }

    /// `F(z) = (1 + z f(z^2))/(1 - z f(z^2))`; maps the disk to the right
    /// half plane with `F(0) = 1`.
    pub fn caratheodory(&self, z: C64) -> Result<C64> {
        let zf = z * self.schur.eval(0, z * z)?;
        let den = C64::new(1.0, 0.0) - zf;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("Caratheodory denominator vanished".into()));
        }
        Ok((C64::new(1.0, 0.0) + zf) / den)
    }

    fn ladder_values(&self, theta: f64) -> Result<Vec<(f64, C64)>> {
        let dir = C64::from_polar(1.0, theta);
        LADDER
            .map(|k| {
                let s = 1.0 - 2f64.powi(-k);
                Ok((s, self.caratheodory(s * dir)?))
            })
            .collect()
    }

    /// Boundary weight `w(theta) = lim_{s->1} Re F(s e^{i theta})`, via the
    /// radial ladder with linear extrapolation in `1 - s`. A point mass makes
    /// the values blow up along the ladder; that is reported as a singular
    /// point, not a weight.
    pub fn ac_weight(&self, theta: f64) -> Result<f64> {
        let vals = self.ladder_values(theta)?;
        let re: Vec<f64> = vals.iter().map(|&(_, f)| f.re).collect();
        let first = re.first().copied().unwrap();
        let last = re.last().copied().unwrap();
        if last.abs() > 100.0 * (first.abs() + 1.0) {
            return Err(Error::Singular(format!(
                "radial limit diverges at theta = {theta}: point mass, not a weight"
            )));
        }
        // Linear extrapolation to s = 1: consecutive s halve the distance,
        // so 2*v_{k+1} - v_k removes the first-order term.
        let n = re.len();
        Ok(2.0 * re[n - 1] - re[n - 2])
    }

    /// Point mass `m(theta) = lim_{s->1} ((1-s)/2) F(s e^{i theta})`; 0 at
    /// absolutely continuous points.
    pub fn mass_at(&self, theta: f64) -> Result<f64> {
        let vals = self.ladder_values(theta)?;
        let scaled: Vec<f64> = vals.iter().map(|&(s, f)| (1.0 - s) / 2.0 * f.re).collect();
        let n = scaled.len();
        let e1 = 2.0 * scaled[n - 1] - scaled[n - 2];
        let e2 = 2.0 * scaled[n - 2] - scaled[n - 3];
        if (e1 - e2).abs() > 1e-3 * (e1.abs() + 1e-6) {
            return Err(Error::NonConvergent(format!(
                "mass extrapolation oscillates at theta = {theta}"
            )));
        }
        if e1.abs() < 1e-8 {
            return Ok(0.0);
        }
        Ok(e1)
    }

    /// Samples the measure: weight on a midpoint grid of `grid_n` angles
    /// (avoiding candidate mass angles) plus masses at the given candidates.
    pub fn measure(&self, grid_n: usize, mass_candidates: &[f64]) -> Result<SpectralMeasure> {
        let mut thetas = Vec::with_capacity(grid_n);
        let mut weights = Vec::with_capacity(grid_n);
        for i in 0..grid_n {
            let theta = std::f64::consts::TAU * (i as f64 + 0.5) / grid_n as f64;
            thetas.push(theta);
            weights.push(self.ac_weight(theta)?);
        }
        let mut masses = Vec::new();
        for &theta in mass_candidates {
            let m = self.mass_at(theta)?;
            if m > 1e-8 {
                masses.push((theta, m));
            }
        }
        Ok(SpectralMeasure { thetas, weights, masses })
    }
}

/// Residual of the identity connecting the g-functions with Schur functions
/// of the transformed parameter sequences:
/// `g+_j(z) = z^2 f_j(z^2)` over `conj(gamma_{k+1})` for `j >= 0`, and
/// `g-_j(z) = z^2 f_{|j|}(z^2)` over `-gamma_{-1-k}` for `j <= 0`.
/// At `j = 0` both sides are checked and the larger residual returned.
pub fn bridge_check(coins: &CoinSequence, j: i64, z: C64) -> Result<f64> {
    let gf = GenFun::new(WalkKind::D, coins.clone());
    let z2 = z * z;
    let mut worst = 0.0f64;
    if j >= 0 {
        let lhs = gf.g_plus(j, z)?;
        let rhs = z2 * SchurEvaluator::plus_bridge(coins.clone()).eval(j, z2)?;
        worst = worst.max((lhs - rhs).norm());
    }
    if j <= 0 {
        let lhs = gf.g_minus(j, z)?;
        let rhs = z2 * SchurEvaluator::minus_bridge(coins.clone()).eval(-j, z2)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

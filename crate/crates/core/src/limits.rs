//! Closed-form long-time profiles: origin/bottom localization and the
//! exact three-term splitting of passage weights for the power-law model
//! `gamma_j = 1/(r + j)`, plus the weak-limit quantities of homogeneous walks.
//!
//! For the power-law first-kind walk every passage-weight matrix entry is a
//! Taylor coefficient of `p(z) h(z)` with `p` polynomial and
//! `h(z) = 1/((z - 1)(z - t))`, `t = r/(1 - r)`. Partial fractions give
//! `[z^K] h = A(-1 + tau^{K+1})` with `A = (r-1)/(2r-1)`, `tau = 1/t`; the
//! constant part (pole at `z = 1`) collects into an `n`-independent
//! origin-localized term, the geometric part of the rightward row into the
//! bottom-traveling term, and the rest decays in the interior.

use crate::coin::CoinSequence;
use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};
use crate::quad::adaptive_simpson;
use crate::walk::{WalkKind, WalkState};

/// The coin family `gamma_j = 1/(r + j)`, `r > 1`.
#[derive(Clone, Copy, Debug)]
pub struct PowerLawModel {
    r: f64,
}

impl PowerLawModel {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 1.0) {
            return Err(Error::Invalid(format!("power-law parameter r = {r} must exceed 1")));
        }
        Ok(PowerLawModel { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Geometric base `tau = (1 - r)/r` of the bottom profile.
    pub fn tau(&self) -> f64 {
        (1.0 - self.r) / self.r
    }

    pub fn coins(&self) -> CoinSequence {
        CoinSequence::power_law(self.r).expect("r validated at construction")
    }

    /// Direction of origin localization; states orthogonal to it do not
    /// localize at the origin.
    pub fn localization_direction(&self) -> [f64; 2] {
        [(self.r - 1.0).sqrt(), (self.r + 1.0).sqrt()]
    }

    /// Downward continued-fraction fixed point `f_j(z) = 1/(r+j - (r-1+j)z)`.
    pub fn schur_f(&self, j: u64, z: C64) -> Result<C64> {
        let a = self.r + j as f64;
        let den = a - (a - 1.0) * z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular(format!("pole of f_{j} at z = {z}")));
        }
        Ok(den.inv())
    }

    /// Rightward generating-function tail `g_j(z) = z^2/(r+1+j - (r+j)z^2)`.
    pub fn g_plus(&self, j: u64, z: C64) -> Result<C64> {
        let a = self.r + j as f64;
        let den = a + 1.0 - a * z * z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular(format!("pole of g_{j} at z = {z}")));
        }
        Ok(z * z / den)
    }

    /// Rational boundary-measure transform
    /// `F(z) = (z+1)(z - r/(r-1)) / ((z-1)(z + r/(r-1)))`.
    pub fn caratheodory(&self, z: C64) -> Result<C64> {
        let t = self.r / (self.r - 1.0);
        let den = (z - 1.0) * (z + t);
        if den.norm() < 1e-14 {
            return Err(Error::Singular(format!("pole of F at z = {z}")));
        }
        Ok((z + 1.0) * (z - t) / den)
    }

    /// Absolutely continuous spectral density at angle `theta`.
    pub fn spectral_weight(&self, theta: f64) -> f64 {
        let c = (0.5 * theta).cos().powi(2);
        c / (c + 1.0 / (4.0 * self.r * (self.r - 1.0)))
    }

    /// Point mass of the spectral measure at angle zero.
    pub fn spectral_mass(&self) -> f64 {
        1.0 / (2.0 * self.r - 1.0)
    }
}

/// Normalized initial coin state `(alpha, beta)` at the origin.
#[derive(Clone, Copy, Debug)]
pub struct CoinState {
    pub alpha: C64,
    pub beta: C64,
}

impl CoinState {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Invalid(format!("coin state norm^2 = {norm}, expected 1")));
        }
        Ok(CoinState { alpha, beta })
    }

    pub fn left() -> Self {
        CoinState { alpha: C64::new(1.0, 0.0), beta: C64::ZERO }
    }

    /// Real state orthogonal to the localization direction; it produces no
    /// origin localization in the power-law walk.
    pub fn delocalized(model: &PowerLawModel) -> Self {
        let r = model.r;
        let norm = (2.0 * r).sqrt();
        CoinState {
            alpha: C64::new((r + 1.0).sqrt() / norm, 0.0),
            beta: C64::new(-(r - 1.0).sqrt() / norm, 0.0),
        }
    }

    /// Squared overlap with the localization direction.
    pub fn localization_overlap_sq(&self, model: &PowerLawModel) -> f64 {
        let [l0, l1] = model.localization_direction();
        (self.alpha * l0 + self.beta * l1).norm_sqr()
    }
}

/// Limit of `mu_n(j)` for the first-kind power-law walk: power-law decay
/// `(r^2 - 1) / ((r-1+j)(r+1+j))` times the origin value.
pub fn origin_profile(model: &PowerLawModel, state: &CoinState, j: u64) -> f64 {
    let r = model.r;
    let jf = j as f64;
    let mu_o = 2.0 * r * state.localization_overlap_sq(model)
        / ((r + 1.0) * (r + 1.0) * (2.0 * r - 1.0) * (2.0 * r - 1.0));
    mu_o * (r * r - 1.0) / ((r - 1.0 + jf) * (r + 1.0 + jf))
}

/// Limit of the dual distribution `mu~_n(j) = mu_n(n - j)`: the weight that
/// travels with the ballistic front, geometric in `j` past the first two sites.
pub fn bottom_profile(model: &PowerLawModel, state: &CoinState, j: u64) -> f64 {
    let r = model.r;
    let (a, b) = (state.alpha, state.beta);
    let rho0 = (1.0 - 1.0 / (r * r)).sqrt();
    match j {
        0 => r / (r + 1.0) * (-a / r + b * rho0).norm_sqr(),
        1 => (r - 1.0) / r * (a * rho0 + b / r).norm_sqr(),
        _ => {
            let amp = (a * ((r * r + r - 1.0) / (r - 1.0)) - b * (r * r - 1.0).sqrt()).norm_sqr();
            amp / (r * (r + 1.0) * (r - 1.0) * (r - 1.0)) * model.tau().powi(2 * j as i32)
        }
    }
}

/// Total localized and bottom-traveling masses `(c0, c1)`; they always sum
/// to one (telescoping plus geometric summation of the two profiles).
pub fn limit_constants(model: &PowerLawModel, state: &CoinState) -> (f64, f64) {
    let r = model.r;
    // sum_j 1/((r-1+j)(r+1+j)) telescopes to (1/2)(1/(r-1) + 1/r).
    let c0 = origin_profile(model, state, 0) * (r * r - 1.0) * 0.5 * (1.0 / (r - 1.0) + 1.0 / r);
    let tau2 = model.tau() * model.tau();
    let c1 = bottom_profile(model, state, 0)
        + bottom_profile(model, state, 1)
        + bottom_profile(model, state, 2) / (1.0 - tau2);
    (c0, c1)
}

/// Exponential rate of `P(1 - X_n/n > eps)` for states orthogonal to the
/// localization direction: `eps * log(tau^2)`.
pub fn ld_rate(model: &PowerLawModel, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid(format!("large-deviation parameter eps = {eps} not in (0,1)")));
    }
    Ok(eps * (model.tau() * model.tau()).ln())
}

/// Second-kind walk origin profile along the even-parity subsequence
/// `n + j` even; the odd-parity limit is zero.
pub fn h2_origin_profile(model: &PowerLawModel, j: u64) -> f64 {
    let r = model.r;
    if j == 0 {
        1.0 / ((r + 1.0) * (r + 1.0))
    } else {
        let jf = j as f64;
        (2.0 * r / (r + 1.0)) / ((r - 1.0 + jf) * (r + 1.0 + jf))
    }
}

/// Second-kind walk bottom profile: all bottom mass rides the leading site.
pub fn h2_bottom_profile(model: &PowerLawModel, j: u64) -> f64 {
    if j == 0 {
        model.r / (model.r + 1.0)
    } else {
        0.0
    }
}

/// `(c0, c1)` for the second-kind walk (origin profile parity-averaged).
pub fn h2_limit_constants(model: &PowerLawModel) -> (f64, f64) {
    (1.0 / (model.r + 1.0), model.r / (model.r + 1.0))
}

/// The three-term splitting of a passage weight.
#[derive(Clone, Copy, Debug)]
pub struct Decomposition {
    /// Geometric part of the rightward row; survives at the ballistic front.
    pub bottom: Mat2,
    /// Pole-at-one part; `n`-independent once `n - j` clears the polynomial
    /// degrees, and carries the origin localization.
    pub origin: Mat2,
    /// Geometric part of the leftward row; decays like `tau^{n-j}` at fixed
    /// `j` and like `1/n` at the front.
    pub interior: Mat2,
}

/// Convolution of two real polynomials (coefficient vectors).
fn conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (k, &y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

/// `[z^k] p(z) h(z)` split into its pole-at-one and geometric parts. The
/// steady part is `-A p(1)` in full (independent of `k`), with `p(1)` passed
/// in analytically so that telescoping polynomial sums do not lose precision;
/// the terms compensating degrees above `k` join the geometric part, which
/// therefore cancels the steady part entirely when `k < 0`.
fn coeff_split(poly: &[f64], p_at_one: f64, k: i64, a_const: f64, tau: f64) -> (f64, f64) {
    let steady = -a_const * p_at_one;
    let mut geom = 0.0;
    for (d, &p) in poly.iter().enumerate() {
        let kk = k - d as i64;
        if kk >= 0 {
            geom += p * a_const * tau.powi(kk as i32 + 1);
        } else {
            geom += p * a_const;
        }
    }
    (steady, geom)
}

/// Exact splitting `Xi_n(j) = bottom + origin + interior` for the first-kind
/// power-law walk, valid at every finite `(n, j)`.
pub fn decomposition_terms(model: &PowerLawModel, n: u64, j: u64) -> Decomposition {
    let r = model.r;
    let tau = model.tau();
    let a_const = (r - 1.0) / (2.0 * r - 1.0);
    let rho0 = (1.0 - 1.0 / (r * r)).sqrt();
    let n = n as i64;

    let mut origin = [[0.0f64; 2]; 2];
    let mut bottom = [[0.0f64; 2]; 2];
    let mut interior = [[0.0f64; 2]; 2];

    if j == 0 {
        let s = r * r / (r * r - 1.0);
        let entries: [[(Vec<f64>, f64); 2]; 2] = [
            [
                // (1 - z/r)(z^2 - (r+1)/r) scaled by s
                (
                    vec![-s * (r + 1.0) / r, s * (r + 1.0) / (r * r), s, -s / r],
                    s * (1.0 - 1.0 / r) * (-1.0 / r),
                ),
                (vec![0.0, 0.0, -rho0 * r / (r * r - 1.0)], -rho0 * r / (r * r - 1.0)),
            ],
            [
                (vec![0.0, -s * rho0 * (r + 1.0) / r, 0.0, s * rho0], -s * rho0 / r),
                // -(r - (r-1)z^2)/(r-1)
                (vec![-r / (r - 1.0), 0.0, 1.0], -1.0 / (r - 1.0)),
            ],
        ];
        for (row, polys) in entries.iter().enumerate() {
            for (col, (poly, p_at_one)) in polys.iter().enumerate() {
                let (steady, geom) = coeff_split(poly, *p_at_one, n, a_const, tau);
                origin[row][col] = steady;
                if row == 0 {
                    interior[row][col] = geom;
                } else {
                    bottom[row][col] = geom;
                }
            }
        }
    } else {
        let m = j as f64;
        let scale = -(r / (r * r - 1.0));
        let c_top = scale * (r * (r + 1.0) / ((r + m) * (r + m + 1.0))).sqrt();
        let c_bot = scale * (r * (r + 1.0) / ((r + m - 1.0) * (r + m))).sqrt();
        let p1 = [-1.0 / r, 1.0]; // z - 1/r
        let p2 = [rho0];
        let q = [r + m, 0.0, -(r + m - 1.0)];
        let top_polys = [p1.to_vec(), p2.to_vec()];
        let bot_polys = [conv(&q, &p1), conv(&q, &p2)];
        // Both rows evaluate to (1 - 1/r, rho_0) at z = 1 because q(1) = 1.
        let at_one = [1.0 - 1.0 / r, rho0];
        for col in 0..2 {
            let (steady, geom) =
                coeff_split(&top_polys[col], at_one[col], n - j as i64 - 2, a_const, tau);
            origin[0][col] = c_top * steady;
            interior[0][col] = c_top * geom;
            let (steady, geom) =
                coeff_split(&bot_polys[col], at_one[col], n - j as i64, a_const, tau);
            origin[1][col] = c_bot * steady;
            bottom[1][col] = c_bot * geom;
        }
    }

    let pack = |m: [[f64; 2]; 2]| {
        Mat2::new(
            C64::new(m[0][0], 0.0),
            C64::new(m[0][1], 0.0),
            C64::new(m[1][0], 0.0),
            C64::new(m[1][1], 0.0),
        )
    };
    Decomposition { bottom: pack(bottom), origin: pack(origin), interior: pack(interior) }
}

/// `n -> infinity` limit of the origin term at fixed `j`: rank-one onto the
/// localization direction with power-law column decay.
pub fn origin_term_limit(model: &PowerLawModel, j: u64) -> Mat2 {
    let r = model.r;
    let jf = j as f64;
    let pre = (r * (r - 1.0) / (r + 1.0)).sqrt() / (2.0 * r - 1.0) / (r + jf).sqrt();
    let col = [
        C64::new(pre / (r + 1.0 + jf).sqrt(), 0.0),
        C64::new(pre / (r - 1.0 + jf).sqrt(), 0.0),
    ];
    let [l0, l1] = model.localization_direction();
    Mat2::outer(col, [C64::new(l0, 0.0), C64::new(l1, 0.0)])
}

/// `n -> infinity` limit of the bottom term at fixed distance `j` from the
/// front: the nonzero (rightward) row of `lim bottom(n, n - j)`. With
/// `G_j = tau^{j+1} + tau^j (j >= 1)` the Taylor coefficients of
/// `(1+z)/(t-z)`, the row is `c (-G_j/r + G_{j-1}, rho_0 G_j)` where
/// `c = -r sqrt(r(r+1))/(r^2-1)`; its norm against the initial state
/// reproduces the three-case bottom profile.
pub fn bottom_term_row_limit(model: &PowerLawModel, j: u64) -> [f64; 2] {
    let r = model.r;
    let tau = model.tau();
    let rho0 = (1.0 - 1.0 / (r * r)).sqrt();
    let g = |k: i64| -> f64 {
        if k < 0 {
            0.0
        } else {
            tau.powi(k as i32 + 1) + if k >= 1 { tau.powi(k as i32) } else { 0.0 }
        }
    };
    let c = -r * (r * (r + 1.0)).sqrt() / (r * r - 1.0);
    [c * (-g(j as i64) / r + g(j as i64 - 1)), c * rho0 * g(j as i64)]
}

/// Natural log of the probability carried by sites `<= max_site`; scales
/// amplitudes so that totals far below `f64::MIN_POSITIVE` stay finite in
/// log form.
pub fn tail_log_prob(state: &WalkState, max_site: i64) -> f64 {
    let hi = max_site.min(state.max_site());
    let mut peak = 0.0f64;
    for j in state.min_site()..=hi {
        let [l, r] = state.amplitude(j);
        peak = peak.max(l.norm()).max(r.norm());
    }
    if peak == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut sum = 0.0f64;
    for j in state.min_site()..=hi {
        let [l, r] = state.amplitude(j);
        let (sl, sr) = (l.norm() / peak, r.norm() / peak);
        sum += sl * sl + sr * sr;
    }
    2.0 * peak.ln() + sum.ln()
}

/// `ln P(1 - X_n/n > eps)` for the first-kind power-law walk, evaluated from
/// the exact passage-weight splitting with log-domain accumulation. Direct
/// state simulation cannot reach these tails: the probabilities fall below
/// the square of the f64 roundoff floor once `n eps |ln tau|` passes ~35.
pub fn ld_log_prob(model: &PowerLawModel, state: &CoinState, n: u64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid(format!("large-deviation parameter eps = {eps} not in (0,1)")));
    }
    let j_min = ((n as f64) * eps).floor() as u64;
    let phi = [state.alpha, state.beta];
    // The origin term is analytically rank-one onto the localization
    // direction, so for states orthogonal to it the term vanishes exactly.
    // Dropping it below the roundoff scale keeps that cancellation from
    // flooring the tail at the square of f64 epsilon.
    let rho0 = (1.0 - 1.0 / (model.r * model.r)).sqrt();
    let overlap = state.alpha * (1.0 - 1.0 / model.r) + state.beta * rho0;
    let keep_origin = overlap.norm() >= 1e-12;
    let mut site_logs = Vec::new();
    for j in j_min..=n {
        let d = decomposition_terms(model, n, n - j);
        let total =
            if keep_origin { d.bottom + d.origin + d.interior } else { d.bottom + d.interior };
        let v = total.apply(phi);
        let peak = v[0].norm().max(v[1].norm());
        if peak == 0.0 {
            continue;
        }
        let (s0, s1) = (v[0].norm() / peak, v[1].norm() / peak);
        site_logs.push(2.0 * peak.ln() + (s0 * s0 + s1 * s1).ln());
    }
    let top = site_logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let sum: f64 = site_logs.iter().map(|&l| (l - top).exp()).sum();
    Ok(top + sum.ln())
}

/// Geometric decay base of origin localization for homogeneous first-kind
/// walks.
pub fn nu_reflecting(gamma: C64) -> f64 {
    let rho = (1.0 - gamma.norm_sqr()).sqrt();
    gamma.re.signum() / rho * ((1.0 - gamma.im * gamma.im).sqrt() - gamma.re.abs())
}

/// Geometric decay base of origin localization for homogeneous second-kind
/// walks.
pub fn nu_absorbing(gamma: C64) -> f64 {
    (1.0 - gamma.norm_sqr()).sqrt() / (C64::new(1.0, 0.0) + gamma).norm()
}

/// Weak-limit data of a walk with constant coin parameter: localized mass at
/// the origin plus a ballistic density `w(x) f_K(x; rho)` on `x = X_n/n`.
#[derive(Clone, Copy, Debug)]
pub struct HomogeneousLimits {
    kind: WalkKind,
    gamma: C64,
    state: CoinState,
}

impl HomogeneousLimits {
    pub fn new(kind: WalkKind, gamma: C64, state: CoinState) -> Result<Self> {
        let g = gamma.norm();
        if g == 0.0 || g >= 1.0 {
            return Err(Error::Invalid(format!(
                "homogeneous limits need 0 < |gamma| < 1, got |gamma| = {g}"
            )));
        }
        if kind == WalkKind::H2 && state.beta.norm() > 1e-14 {
            return Err(Error::Invalid(
                "second-kind walk requires initial coin state (alpha, 0)".into(),
            ));
        }
        Ok(HomogeneousLimits { kind, gamma, state })
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn rho(&self) -> f64 {
        (1.0 - self.gamma.norm_sqr()).sqrt()
    }

    /// Decay base of the localization profile; the line walk has none.
    pub fn nu(&self) -> Option<f64> {
        match self.kind {
            WalkKind::H1 => Some(nu_reflecting(self.gamma)),
            WalkKind::H2 => Some(nu_absorbing(self.gamma)),
            WalkKind::D => None,
        }
    }

    /// Total localized mass (coefficient of the point mass at `x = 0`).
    pub fn localized_mass(&self) -> f64 {
        match self.kind {
            WalkKind::H1 => {
                let nu = nu_reflecting(self.gamma);
                let g = self.gamma;
                g.re * g.re / (1.0 - g.im * g.im)
                    * (self.state.alpha * nu + self.state.beta).norm_sqr()
                    * (1.0 + nu * nu)
                    / (1.0 - nu * nu)
            }
            WalkKind::H2 => {
                let g = self.gamma;
                if g.norm_sqr() + g.re > 0.0 {
                    // Equals 1 - nu^2 for the second-kind decay base.
                    2.0 * (g.norm_sqr() + g.re) / (C64::new(1.0, 0.0) + g).norm_sqr()
                } else {
                    0.0
                }
            }
            WalkKind::D => 0.0,
        }
    }

    /// Site-`j` localization limit. Half-line walks decay geometrically in
    /// `nu^2`; the second-kind value is the even-parity subsequence limit
    /// (odd parity gives zero). The line walk does not localize.
    pub fn localization_profile(&self, j: u64) -> f64 {
        match self.kind {
            WalkKind::H1 => {
                let nu = nu_reflecting(self.gamma);
                let g = self.gamma;
                g.re * g.re / (1.0 - g.im * g.im)
                    * (self.state.alpha * nu + self.state.beta).norm_sqr()
                    * (1.0 + nu * nu)
                    * nu.powi(2 * j as i32)
            }
            WalkKind::H2 => {
                let c = self.localized_mass();
                let nu2 = nu_absorbing(self.gamma).powi(2);
                let spike = if j >= 1 { 1.0 / nu2 } else { 0.0 };
                c * c * (1.0 + spike) * nu2.powi(j as i32)
            }
            WalkKind::D => 0.0,
        }
    }

    /// Arcsine-type envelope `f_K(x; rho) = |gamma| / (pi (1-x^2) sqrt(rho^2 - x^2))`
    /// on `|x| < rho`.
    pub fn envelope_density(&self, x: f64) -> f64 {
        let rho = self.rho();
        if x.abs() >= rho {
            return 0.0;
        }
        self.gamma.norm() / (std::f64::consts::PI * (1.0 - x * x) * (rho * rho - x * x).sqrt())
    }

    /// Kind-dependent weight multiplying the envelope.
    pub fn ballistic_weight(&self, x: f64) -> f64 {
        let g = self.gamma;
        let (a, b) = (self.state.alpha, self.state.beta);
        match self.kind {
            WalkKind::H1 => {
                if x < 0.0 {
                    return 0.0;
                }
                let rho = self.rho();
                let inner = -g * a + b * rho;
                let bracket =
                    a.norm_sqr() + inner.norm_sqr() + 2.0 * rho * g.im * inner.im;
                2.0 * g.norm().powi(3) / (rho * rho) * bracket * x * x
                    / (g.re * g.re + g.im * g.im * x * x)
            }
            WalkKind::H2 => {
                if x < 0.0 {
                    return 0.0;
                }
                let s = g.norm_sqr() + g.re;
                2.0 * g.norm_sqr() * (1.0 + g.re) * x * x / (s * s + g.im * g.im * x * x)
            }
            WalkKind::D => {
                let rho = self.rho();
                let drift = a.norm_sqr() - b.norm_sqr() + 2.0 * (g * a * b.conj()).re / rho;
                1.0 - drift * x
            }
        }
    }

    /// Density of the ballistic part of `X_n/n`.
    pub fn density(&self, x: f64) -> f64 {
        self.ballistic_weight(x) * self.envelope_density(x)
    }

    /// Total ballistic mass, integrated with the substitution
    /// `x = rho sin(u)` that removes the square-root endpoint singularity.
    pub fn ballistic_mass(&self) -> f64 {
        let rho = self.rho();
        let g = self.gamma.norm();
        let lo = if self.kind == WalkKind::D { -std::f64::consts::FRAC_PI_2 } else { 0.0 };
        adaptive_simpson(
            &|u: f64| {
                let s = rho * u.sin();
                self.ballistic_weight(s) * g
                    / (std::f64::consts::PI * (1.0 - s * s))
            },
            lo,
            std::f64::consts::FRAC_PI_2,
            1e-10,
        )
    }
}

//! State-vector dynamics for the three walk variants and the passage-weight
//! recursion.
//!
//! One time step is coin-then-shift, `U = S C`. The three variants differ
//! only at the origin:
//!
//! * `H1` — half line, the leftward amplitude at the origin is reflected into
//!   the rightward channel (self loop).
//! * `H2` — half line, zero-diagonal origin coin (realized as `gamma_0 = -1`)
//!   and initial coin state `(1, 0)`; the dynamics then stay on `j >= 0`.
//! * `D`  — doubly infinite line.

use num_complex::Complex64;

use crate::coin::{build_coin, local_matrices, CoinSequence};
use crate::error::{Error, Result};
use crate::mat2::{spinor_norm_sq, Mat2, Spinor, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkKind {
    H1,
    H2,
    D,
}

impl WalkKind {
    pub fn is_half_line(self) -> bool {
        matches!(self, WalkKind::H1 | WalkKind::H2)
    }
}

/// Coin parameter actually applied at `j`: the second-kind walk pins the
/// origin coin to `gamma = -1` regardless of the sequence.
pub fn effective_gamma(kind: WalkKind, coins: &CoinSequence, j: i64) -> C64 {
    if kind == WalkKind::H2 && j == 0 {
        Complex64::new(-1.0, 0.0)
    } else {
        coins.gamma(j)
    }
}

/// Finitely supported walk state: a contiguous block of amplitude pairs.
#[derive(Clone, Debug)]
pub struct WalkState {
    kind: WalkKind,
    time: u64,
    min_site: i64,
    amps: Vec<Spinor>,
}

impl WalkState {
    /// State localized at the origin with coin state `(alpha, beta)`.
    pub fn at_origin(kind: WalkKind, alpha: C64, beta: C64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Invalid(format!("initial state norm^2 = {norm}, expected 1")));
        }
        if kind == WalkKind::H2 && beta.norm() > 1e-14 {
            return Err(Error::Invalid(
                "second-kind walk requires initial coin state (alpha, 0)".into(),
            ));
        }
        Ok(WalkState { kind, time: 0, min_site: 0, amps: vec![[alpha, beta]] })
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn min_site(&self) -> i64 {
        self.min_site
    }

    pub fn max_site(&self) -> i64 {
        self.min_site + self.amps.len() as i64 - 1
    }

    /// Amplitude pair at site `j` (zero outside the support).
    pub fn amplitude(&self, j: i64) -> Spinor {
        let idx = j - self.min_site;
        if idx >= 0 && (idx as usize) < self.amps.len() {
            self.amps[idx as usize]
        } else {
            [C64::ZERO, C64::ZERO]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(spinor_norm_sq).sum()
    }
}

/// One coin-then-shift step.
pub fn step(state: &WalkState, coins: &CoinSequence) -> WalkState {
    let kind = state.kind;
    let (new_min, new_len) = match kind {
        WalkKind::D => (state.min_site - 1, state.amps.len() + 2),
        WalkKind::H1 | WalkKind::H2 => (0, state.amps.len() + 1),
    };
    let mut out = vec![[C64::ZERO, C64::ZERO]; new_len];

    for (idx, &amp) in state.amps.iter().enumerate() {
        let j = state.min_site + idx as i64;
        let coin = build_coin(effective_gamma(kind, coins, j))
            .expect("sequence validated at construction")
            .0;
        let [c_l, c_r] = coin.apply(amp);

        // Leftward component.
        if j == 0 && kind == WalkKind::H1 {
            out[0][1] += c_l; // self loop into the rightward channel
        } else if j == 0 && kind == WalkKind::H2 {
            // Exactly zero on the invariant subspace (beta = 0); nothing leaves.
            debug_assert!(c_l.norm() < 1e-9);
        } else {
            out[(j - 1 - new_min) as usize][0] += c_l;
        }
        // Rightward component.
        out[(j + 1 - new_min) as usize][1] += c_r;
    }

    WalkState { kind, time: state.time + 1, min_site: new_min, amps: out }
}

/// `n` steps from the origin state `(alpha, beta)`.
pub fn evolve(
    alpha: C64,
    beta: C64,
    n: u64,
    kind: WalkKind,
    coins: &CoinSequence,
) -> Result<WalkState> {
    let mut state = WalkState::at_origin(kind, alpha, beta)?;
    for _ in 0..n {
        state = step(&state, coins);
    }
    Ok(state)
}

/// Site distribution `mu_n(j) = |a_L(j)|^2 + |a_R(j)|^2`, optionally
/// re-indexed from the ballistic front (`j -> n - j`).
#[derive(Clone, Debug)]
pub struct Distribution {
    pub time: u64,
    pub dual: bool,
    min_site: i64,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn min_site(&self) -> i64 {
        self.min_site
    }

    pub fn max_site(&self) -> i64 {
        self.min_site + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, j: i64) -> f64 {
        let idx = j - self.min_site;
        if idx >= 0 && (idx as usize) < self.probs.len() {
            self.probs[idx as usize]
        } else {
            0.0
        }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let min = self.min_site;
        self.probs.iter().enumerate().map(move |(i, &p)| (min + i as i64, p))
    }
}

pub fn distribution(state: &WalkState) -> Distribution {
    Distribution {
        time: state.time,
        dual: false,
        min_site: state.min_site,
        probs: state.amps.iter().map(spinor_norm_sq).collect(),
    }
}

/// Dual distribution `mu~_n(j) = mu_n(n - j)`.
pub fn dual_distribution(state: &WalkState) -> Distribution {
    let n = state.time as i64;
    let mut probs: Vec<f64> = state.amps.iter().map(spinor_norm_sq).collect();
    probs.reverse();
    Distribution {
        time: state.time,
        dual: true,
        // site j of the dual corresponds to n - j; reversed vector starts at
        // n - max_site.
        min_site: n - (state.min_site + state.amps.len() as i64 - 1),
        probs,
    }
}

/// Passage weights `Xi_n(j)` for all reachable `j` at one time `n`.
#[derive(Clone, Debug)]
pub struct PassageWeights {
    pub n: u64,
    min_site: i64,
    mats: Vec<Mat2>,
}

impl PassageWeights {
    pub fn min_site(&self) -> i64 {
        self.min_site
    }

    pub fn max_site(&self) -> i64 {
        self.min_site + self.mats.len() as i64 - 1
    }

    pub fn xi(&self, j: i64) -> Mat2 {
        let idx = j - self.min_site;
        if idx >= 0 && (idx as usize) < self.mats.len() {
            self.mats[idx as usize]
        } else {
            Mat2::zero()
        }
    }
}

/// Runs the two-term recursion
/// `Xi_n(j) = P_{j+1} Xi_{n-1}(j+1) + Q_{j-1} Xi_{n-1}(j-1)` with the
/// half-line boundary cases (`S_0` self-loop term for the first kind,
/// `Q_{-1} = 0` for the second kind).
pub fn passage_weights(n: u64, kind: WalkKind, coins: &CoinSequence) -> PassageWeights {
    let mut cur = PassageWeights { n: 0, min_site: 0, mats: vec![Mat2::identity()] };
    for t in 1..=n {
        let (min, len) = match kind {
            WalkKind::D => (-(t as i64), 2 * t as usize + 1),
            WalkKind::H1 | WalkKind::H2 => (0, t as usize + 1),
        };
        let mut mats = vec![Mat2::zero(); len];
        for (idx, m) in mats.iter_mut().enumerate() {
            let j = min + idx as i64;
            if j == 0 && kind != WalkKind::D {
                let lm1 = local_matrices(effective_gamma(kind, coins, 1));
                *m = lm1.p * cur.xi(1);
                if kind == WalkKind::H1 {
                    let lm0 = local_matrices(effective_gamma(kind, coins, 0));
                    *m += lm0.s * cur.xi(0);
                }
            } else {
                let above = local_matrices(effective_gamma(kind, coins, j + 1));
                let below = local_matrices(effective_gamma(kind, coins, j - 1));
                *m = above.p * cur.xi(j + 1) + below.q * cur.xi(j - 1);
            }
        }
        cur = PassageWeights { n: t, min_site: min, mats };
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Brute-force path-sum oracle for the line walk: amplitude at `(j, x)`
    /// after `n` steps is the sum over all move sequences of the product of
    /// the selected coin rows. Independent of the state-vector code path.
    fn path_sum_d(phi0: Spinor, n: u32, coins: &CoinSequence, j: i64, chirality: usize) -> C64 {
        let mut total = C64::ZERO;
        // Each bit: 0 = left move (take top coin row), 1 = right move.
        for mask in 0u32..(1 << n) {
            let mut site = 0i64;
            let mut vec = phi0;
            for s in 0..n {
                let coin = build_coin(coins.gamma(site)).unwrap().0;
                let coined = coin.apply(vec);
                if mask >> s & 1 == 0 {
                    site -= 1;
                    vec = [coined[0], C64::ZERO];
                } else {
                    site += 1;
                    vec = [C64::ZERO, coined[1]];
                }
            }
            if site == j {
                total += vec[chirality];
            }
        }
        total
    }

    #[test]
    fn transparent_line_walk_splits_in_one_step() {
        let a = c(0.6, 0.0);
        let b = c(0.0, 0.8);
        let s = evolve(a, b, 1, WalkKind::D, &CoinSequence::Zero).unwrap();
        assert!((s.amplitude(-1)[0] - a).norm() < 1e-15);
        assert!((s.amplitude(1)[1] - b).norm() < 1e-15);
        assert!(s.amplitude(0)[0].norm() < 1e-15 && s.amplitude(0)[1].norm() < 1e-15);
    }

    #[test]
    fn h1_origin_reflection_one_step() {
        // Only gamma_0 nonzero; phi0 = (1, 0). Coin gives (rho_0, -gamma_0);
        // the leftward part self-loops into (0, R), the rightward part moves to (1, R).
        let g0 = c(0.5, 0.0);
        let coins = CoinSequence::explicit(0, vec![g0]).unwrap();
        let s = evolve(c(1.0, 0.0), C64::ZERO, 1, WalkKind::H1, &coins).unwrap();
        let rho0 = (1.0 - 0.25f64).sqrt();
        assert!((s.amplitude(0)[1] - c(rho0, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1)[1] + g0).norm() < 1e-15);
        assert!(s.amplitude(0)[0].norm() < 1e-15);
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let s = evolve(c(0.0, 1.0), C64::ZERO, 0, WalkKind::H2, &CoinSequence::Zero).unwrap();
        assert_eq!(s.time(), 0);
        assert!((s.amplitude(0)[0] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn h2_rejects_rightward_initial_state() {
        assert!(evolve(c(0.6, 0.0), c(0.8, 0.0), 1, WalkKind::H2, &CoinSequence::Zero).is_err());
    }

    #[test]
    fn line_walk_matches_path_sum() {
        let coins = CoinSequence::homogeneous(c(0.5, 0.0)).unwrap();
        let phi0 = [c(0.6, 0.0), c(0.0, 0.8)];
        for n in [2u32, 3, 5] {
            let s = evolve(phi0[0], phi0[1], n as u64, WalkKind::D, &coins).unwrap();
            for j in -(n as i64)..=n as i64 {
                for x in 0..2 {
                    let expect = path_sum_d(phi0, n, &coins, j, x);
                    assert!(
                        (s.amplitude(j)[x] - expect).norm() < 1e-13,
                        "n={n} j={j} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn free_rightmover_is_deterministic() {
        let s = evolve(C64::ZERO, c(1.0, 0.0), 5, WalkKind::D, &CoinSequence::Zero).unwrap();
        let d = distribution(&s);
        assert!((d.prob(5) - 1.0).abs() < 1e-14);
        assert!((d.total() - 1.0).abs() < 1e-14);
        let dual = dual_distribution(&s);
        assert!((dual.prob(0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unitarity_random_trials() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let g = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            let coins = CoinSequence::homogeneous(g).unwrap();
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let alpha = c(theta.cos(), 0.0);
            let beta = c(theta.sin() * phase.cos(), theta.sin() * phase.sin());
            let kind = match trial % 3 {
                0 => WalkKind::H1,
                1 => WalkKind::H2,
                _ => WalkKind::D,
            };
            let (a, b) = if kind == WalkKind::H2 { (c(1.0, 0.0), C64::ZERO) } else { (alpha, beta) };
            let n = 100 + 20 * trial;
            let s = evolve(a, b, n, kind, &coins).unwrap();
            assert!((s.norm_sq() - 1.0).abs() < 1e-12, "kind={kind:?} n={n}");
        }
    }

    #[test]
    fn recursion_matches_evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
            let coins = CoinSequence::explicit(
                -10,
                (0..21).map(|_| c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6))).collect(),
            )
            .unwrap();
            let (a, b) = if kind == WalkKind::H2 {
                (c(1.0, 0.0), C64::ZERO)
            } else {
                (c(0.6, 0.0), c(0.0, 0.8))
            };
            for n in [1u64, 7, 25, 50] {
                let s = evolve(a, b, n, kind, &coins).unwrap();
                let w = passage_weights(n, kind, &coins);
                for j in w.min_site()..=w.max_site() {
                    let predicted = w.xi(j).apply([a, b]);
                    let actual = s.amplitude(j);
                    let err = (predicted[0] - actual[0]).norm() + (predicted[1] - actual[1]).norm();
                    assert!(err < 1e-12, "kind={kind:?} n={n} j={j} err={err}");
                }
            }
        }
    }

    #[test]
    fn passage_weight_unitarity() {
        let coins = CoinSequence::power_law(2.0).unwrap();
        let w = passage_weights(40, WalkKind::H1, &coins);
        for phi in [[c(1.0, 0.0), C64::ZERO], [c(0.6, 0.0), c(0.0, 0.8)]] {
            let total: f64 = (w.min_site()..=w.max_site())
                .map(|j| spinor_norm_sq(&w.xi(j).apply(phi)))
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn support_confinement() {
        let coins = CoinSequence::homogeneous(c(0.4, 0.1)).unwrap();
        let s = evolve(c(1.0, 0.0), C64::ZERO, 30, WalkKind::H1, &coins).unwrap();
        assert!(s.min_site() >= 0 && s.max_site() <= 30);
        let d = evolve(c(1.0, 0.0), C64::ZERO, 30, WalkKind::D, &coins).unwrap();
        assert!(d.min_site() >= -30 && d.max_site() <= 30);
    }

    #[test]
    fn h2_parity() {
        let coins = CoinSequence::power_law(3.0).unwrap();
        for n in [9u64, 10, 31] {
            let s = evolve(c(1.0, 0.0), C64::ZERO, n, WalkKind::H2, &coins).unwrap();
            let d = distribution(&s);
            for (j, p) in d.iter() {
                if (n as i64 + j) % 2 != 0 {
                    assert!(p == 0.0, "n={n} j={j} p={p}");
                }
            }
        }
    }
}

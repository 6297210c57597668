//! End-to-end acceptance checks. Each test covers one numbered criterion and
//! prints a single PASS/FAIL line; the asserts carry the measured values.

use num_complex::Complex64;
use qwalk_core::{
    bridge_check, cmv_walk_correspondence, distribution, doubling_check, dual_distribution,
    evolve, ld_rate, limit_constants, passage_weights, theta_block, CoinSequence, CoinState,
    GenFun, HomogeneousLimits, Mat2, PowerLawModel, SchurEvaluator, SpectralAnalyzer, WalkKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn report(name: &str, ok: bool) {
    println!("acceptance {}: {}", name, if ok { "PASS" } else { "FAIL" });
}

/// 1. Generating-function series coefficients reproduce simulated passage
/// weights for all three walk kinds, n <= 30, all sites, to 1e-10.
#[test]
fn criterion_01_series_vs_weights() {
    let order = 30usize;
    let mut worst = 0.0f64;
    for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
        let coins = CoinSequence::power_law(3.0).unwrap();
        let gf = GenFun::new(kind, coins.clone());
        let weights: Vec<_> =
            (0..=order as u64).map(|n| passage_weights(n, kind, &coins)).collect();
        let range =
            if kind == WalkKind::D { -(order as i64)..=order as i64 } else { 0..=order as i64 };
        for j in range {
            let ser = gf.xi_series(j, order).unwrap();
            for n in 0..=order {
                worst = worst.max(ser.coeff(n).max_abs_diff(&weights[n].xi(j)));
            }
        }
    }
    let ok = worst < 1e-10;
    report("01 series-vs-weights", ok);
    assert!(ok, "max abs error {worst}");
}

/// 2. Bridge identity between g-functions and Schur functions: residual
/// below 1e-10 at 20 random points for the power-law model and for 10 random
/// truncated coin sequences.
#[test]
fn criterion_02_bridge_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    let pl = CoinSequence::power_law(3.0).unwrap();
    for _ in 0..20 {
        let z = C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..6.28));
        let j = rng.gen_range(0..12);
        worst = worst.max(bridge_check(&pl, j, z).unwrap());
    }
    for _ in 0..10 {
        let coins = CoinSequence::explicit(
            -12,
            (0..25).map(|_| c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6))).collect(),
        )
        .unwrap();
        let z = C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..6.28));
        for j in [-4i64, -1, 0, 2, 5] {
            worst = worst.max(bridge_check(&coins, j, z).unwrap());
        }
    }
    let ok = worst < 1e-10;
    report("02 bridge-identity", ok);
    assert!(ok, "max residual {worst}");
}

/// 3. The squared walk operator restricted to one chirality agrees entrywise
/// with the CMV matrix of the coin sequence, truncation 100, inner window,
/// to 1e-12.
#[test]
fn criterion_03_cmv_correspondence() {
    let mut worst = 0.0f64;
    for coins in [
        CoinSequence::power_law(3.0).unwrap(),
        CoinSequence::homogeneous(c(0.4, 0.2)).unwrap(),
    ] {
        worst = worst.max(cmv_walk_correspondence(&coins, 100).unwrap());
    }
    let ok = worst < 1e-12;
    report("03 cmv-correspondence", ok);
    assert!(ok, "max deviation {worst}");
}

/// 4. Spectral measure of the power-law model: point mass 1/(2r-1) at angle
/// zero to 1e-4, a.c. weight matching the closed form to 1e-5 on a 256-point
/// grid, and total mass 1 to 1e-6, for r in {1.5, 2, 3}.
#[test]
fn criterion_04_spectral_measure() {
    let mut ok = true;
    for r in [1.5, 2.0, 3.0] {
        let model = PowerLawModel::new(r).unwrap();
        let an = SpectralAnalyzer::new(model.coins());
        let mu = an.measure(256, &[0.0]).unwrap();
        let mass_err = (mu.masses[0].1 - model.spectral_mass()).abs();
        let weight_err = mu
            .thetas
            .iter()
            .zip(&mu.weights)
            .map(|(&t, &w)| (w - model.spectral_weight(t)).abs())
            .fold(0.0f64, f64::max);
        let norm_err = mu.normalization_residual();
        let here = mass_err < 1e-4 && weight_err < 1e-5 && norm_err < 1e-6;
        if !here {
            eprintln!("r={r}: mass_err={mass_err} weight_err={weight_err} norm_err={norm_err}");
        }
        ok &= here;
    }
    report("04 spectral-measure", ok);
    assert!(ok);
}

/// 5. Bottom-localization values for r = 3, state (1, 0): the dual
/// distribution at n = 1000 matches 1/12, 16/27, 0.124486 at sites 0, 1, 2,
/// and the two limit constants are recovered by partial sums at n = 2000.
#[test]
fn criterion_05_bottom_profile_quantitative() {
    let coins = CoinSequence::power_law(3.0).unwrap();
    let state = evolve(c(1.0, 0.0), C64::ZERO, 1000, WalkKind::H1, &coins).unwrap();
    let dual = dual_distribution(&state);
    let targets = [(0i64, 1.0 / 12.0, 1e-3), (1, 16.0 / 27.0, 1e-3), (2, 0.124486, 2e-3)];
    let mut ok = true;
    for (j, want, tol) in targets {
        let got = dual.prob(j);
        if (got - want).abs() >= tol {
            eprintln!("dual site {j}: got {got}, want {want} +- {tol}");
            ok = false;
        }
    }

    let state2 = evolve(c(1.0, 0.0), C64::ZERO, 2000, WalkKind::H1, &coins).unwrap();
    let mu = distribution(&state2);
    let dual2 = dual_distribution(&state2);
    let j_cut = 40i64;
    let near: f64 = (0..=j_cut).map(|j| mu.prob(j)).sum();
    let front: f64 = (0..=j_cut).map(|j| dual2.prob(j)).sum();
    let model = PowerLawModel::new(3.0).unwrap();
    let (c0, c1) = limit_constants(&model, &CoinState::left());
    ok &= (c0 - 0.1).abs() < 1e-12 && (c1 - 0.9).abs() < 1e-12;
    ok &= (near - c0).abs() < 0.02 && (front - c1).abs() < 0.02;
    ok &= (near + front - 1.0).abs() < 0.02;
    report("05 bottom-profile", ok);
    assert!(ok, "near={near} front={front} c0={c0} c1={c1}");
}

/// 6. The bottom/origin/interior splitting reassembles every passage weight
/// to 1e-10 for n <= 200 and r in {1.5, 3}.
#[test]
fn criterion_06_decomposition_exact() {
    let mut worst = 0.0f64;
    for r in [1.5, 3.0] {
        let model = PowerLawModel::new(r).unwrap();
        let coins = model.coins();
        for n in 0..=200u64 {
            let weights = passage_weights(n, WalkKind::H1, &coins);
            for j in 0..=n {
                let d = qwalk_core::decomposition_terms(&model, n, j);
                let total = d.bottom + d.origin + d.interior;
                worst = worst.max(total.max_abs_diff(&weights.xi(j as i64)));
            }
        }
    }
    let ok = worst < 1e-10;
    report("06 decomposition", ok);
    assert!(ok, "max reassembly error {worst}");
}

/// 7. Large-deviation rate for a state orthogonal to the localization
/// direction: the slope of ln P(1 - X_n/n > eps) against n over
/// n in {400, 800, 1600} matches eps ln(tau^2) within 5% for
/// eps in {0.2, 0.4, 0.6}.
#[test]
fn criterion_07_large_deviation_rate() {
    let model = PowerLawModel::new(3.0).unwrap();
    let state = CoinState::delocalized(&model);
    let ns = [400u64, 800, 1600];
    let mut ok = true;
    for eps in [0.2, 0.4, 0.6] {
        let lps: Vec<f64> = ns
            .iter()
            .map(|&n| qwalk_core::ld_log_prob(&model, &state, n, eps).unwrap())
            .collect();
        let xm = ns.iter().map(|&n| n as f64).sum::<f64>() / 3.0;
        let ym = lps.iter().sum::<f64>() / 3.0;
        let num: f64 = ns.iter().zip(&lps).map(|(&n, &l)| (n as f64 - xm) * (l - ym)).sum();
        let den: f64 = ns.iter().map(|&n| (n as f64 - xm).powi(2)).sum();
        let slope = num / den;
        let rate = ld_rate(&model, eps).unwrap();
        let rel = ((slope - rate) / rate).abs();
        if rel >= 0.05 {
            eprintln!("eps={eps}: slope={slope} rate={rate} rel={rel}");
            ok = false;
        }
    }
    report("07 large-deviation-rate", ok);
    assert!(ok);
}

/// 8. Second-kind walk at r = 3, n = 1000: even-subsequence origin value
/// 1/16 and bottom mass 3/4, both to 2e-3.
#[test]
fn criterion_08_second_kind_profiles() {
    let coins = CoinSequence::power_law(3.0).unwrap();
    let state = evolve(c(1.0, 0.0), C64::ZERO, 1000, WalkKind::H2, &coins).unwrap();
    let mu = distribution(&state);
    let dual = dual_distribution(&state);
    let origin_err = (mu.prob(0) - 1.0 / 16.0).abs();
    let bottom_err = (dual.prob(0) - 0.75).abs();
    let ok = origin_err < 2e-3 && bottom_err < 2e-3;
    report("08 second-kind-profiles", ok);
    assert!(ok, "origin_err={origin_err} bottom_err={bottom_err}");
}

/// 9. Homogeneous references at gamma = 1/2: the line walk's position
/// histogram at n = 2000 is within total variation 0.05 of the closed-form
/// density, and the half-line localization decay base fits nu^2 within 2%.
#[test]
fn criterion_09_homogeneous_references() {
    let gamma = c(0.5, 0.0);
    let coins = CoinSequence::homogeneous(gamma).unwrap();
    let init = CoinState::new(c(1.0, 0.0), C64::ZERO).unwrap();

    // Line walk: 50-bin histogram of X_n/n over (-rho, rho) against the
    // density, integrated bin-by-bin with the sine substitution that absorbs
    // the endpoint singularity.
    let n = 2000u64;
    let lim = HomogeneousLimits::new(WalkKind::D, gamma, init).unwrap();
    let rho = lim.rho();
    let state = evolve(init.alpha, init.beta, n, WalkKind::D, &coins).unwrap();
    let mu = distribution(&state);
    let bins = 50usize;
    let mut tv = 0.0f64;
    let mut inside = 0.0f64;
    for b in 0..bins {
        let lo = -rho + 2.0 * rho * b as f64 / bins as f64;
        let hi = -rho + 2.0 * rho * (b + 1) as f64 / bins as f64;
        let mut emp = 0.0;
        for (j, p) in mu.iter() {
            let x = j as f64 / n as f64;
            if x >= lo && x < hi {
                emp += p;
            }
        }
        inside += emp;
        let (ulo, uhi) = ((lo / rho).asin(), (hi / rho).asin());
        let model_mass = qwalk_core::adaptive_simpson(
            &|u: f64| {
                let x = rho * u.sin();
                lim.ballistic_weight(x) * gamma.norm() / (std::f64::consts::PI * (1.0 - x * x))
            },
            ulo,
            uhi,
            1e-10,
        );
        tv += (emp - model_mass).abs();
    }
    tv = 0.5 * (tv + (1.0 - inside));
    let mut ok = tv < 0.05;
    if !ok {
        eprintln!("line-walk TV distance {tv}");
    }

    // Half-line walk: log-linear fit of mu_n(j) over j in [2, 12].
    let h1 = evolve(init.alpha, init.beta, n, WalkKind::H1, &coins).unwrap();
    let mu1 = distribution(&h1);
    let js: Vec<f64> = (2..=12).map(|j| j as f64).collect();
    let ls: Vec<f64> = (2..=12).map(|j| mu1.prob(j).ln()).collect();
    let xm = js.iter().sum::<f64>() / js.len() as f64;
    let ym = ls.iter().sum::<f64>() / ls.len() as f64;
    let num: f64 = js.iter().zip(&ls).map(|(&x, &y)| (x - xm) * (y - ym)).sum();
    let den: f64 = js.iter().map(|&x| (x - xm).powi(2)).sum();
    let base = (num / den).exp();
    let lim1 = HomogeneousLimits::new(WalkKind::H1, gamma, init).unwrap();
    let nu2 = lim1.nu().unwrap().powi(2);
    let rel = ((base - nu2) / nu2).abs();
    if rel >= 0.02 {
        eprintln!("decay base {base} vs nu^2 {nu2} (rel {rel})");
        ok = false;
    }
    report("09 homogeneous-references", ok);
    assert!(ok);
}

/// 10. Randomized property suites, 20+ trials each: unitarity, support
/// confinement, line-walk parity, the half-line/line doubling relation, the
/// Schur-class bound, and unitarity of the 2x2 rotation blocks.
#[test]
fn criterion_10_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;

    // Unitarity and support confinement across kinds and coin families.
    for trial in 0..24 {
        let coins = match trial % 3 {
            0 => CoinSequence::power_law(1.2 + rng.gen_range(0.0..4.0)).unwrap(),
            1 => CoinSequence::homogeneous(c(
                rng.gen_range(-0.6..0.6),
                rng.gen_range(-0.6..0.6),
            ))
            .unwrap(),
            _ => CoinSequence::explicit(
                -10,
                (0..21)
                    .map(|_| c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6)))
                    .collect(),
            )
            .unwrap(),
        };
        let kind = [WalkKind::H1, WalkKind::H2, WalkKind::D][trial % 3];
        let phase = rng.gen_range(0.0..6.28);
        let a = rng.gen_range(0.0..1.0f64).sqrt();
        let b = (1.0 - a * a).sqrt();
        let (alpha, beta) = if kind == WalkKind::H2 {
            (c(1.0, 0.0), C64::ZERO)
        } else {
            (c(a, 0.0), C64::from_polar(b, phase))
        };
        let n = rng.gen_range(5..40u64);
        let state = evolve(alpha, beta, n, kind, &coins).unwrap();
        ok &= (state.norm_sq() - 1.0).abs() < 1e-12;
        ok &= state.max_site() <= n as i64;
        ok &= state.min_site() >= if kind == WalkKind::D { -(n as i64) } else { 0 };
    }

    // Parity: without an origin self-loop, amplitude support keeps the
    // parity of the step count.
    for _ in 0..20 {
        let coins =
            CoinSequence::homogeneous(c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6)))
                .unwrap();
        let n = rng.gen_range(3..25u64);
        let state = evolve(c(0.6, 0.0), c(0.0, 0.8), n, WalkKind::D, &coins).unwrap();
        for j in state.min_site()..=state.max_site() {
            let [l, r] = state.amplitude(j);
            if (j - n as i64) % 2 != 0 {
                ok &= l.norm() < 1e-14 && r.norm() < 1e-14;
            }
        }
    }

    // Doubling: first-kind walk at z^2 equals the interleaved line walk at z.
    for trial in 0..20 {
        let coins = if trial % 2 == 0 {
            CoinSequence::power_law(1.3 + rng.gen_range(0.0..3.0)).unwrap()
        } else {
            CoinSequence::homogeneous(c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6)))
                .unwrap()
        };
        let z = C64::from_polar(rng.gen_range(0.0..0.7), rng.gen_range(0.0..6.28));
        let j = rng.gen_range(0..5);
        ok &= doubling_check(&coins, j, z).unwrap() < 1e-10;
    }

    // Schur-class bound: |f(z)| <= 1 on the open disk.
    for trial in 0..20 {
        let coins = if trial % 2 == 0 {
            CoinSequence::power_law(1.2 + rng.gen_range(0.0..4.0)).unwrap()
        } else {
            CoinSequence::explicit(
                0,
                (0..20)
                    .map(|_| c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7)))
                    .collect(),
            )
            .unwrap()
        };
        let se = SchurEvaluator::new(coins);
        let z = C64::from_polar(rng.gen_range(0.0..0.98), rng.gen_range(0.0..6.28));
        ok &= se.eval(rng.gen_range(0..6), z).unwrap().norm() <= 1.0 + 1e-12;
    }

    // Rotation blocks of the band factorization are unitary.
    for _ in 0..20 {
        let g = C64::from_polar(rng.gen_range(0.0..0.99), rng.gen_range(0.0..6.28));
        let th = theta_block(g);
        let gram = th * th.adjoint();
        ok &= gram.max_abs_diff(&Mat2::identity()) < 1e-14;
    }

    report("10 property-suites", ok);
    assert!(ok);
}

/// Qualitative shape check: the balanced initial state at r = 3, n = 200
/// shows mass piled both at the origin and at the ballistic front with a
/// depleted middle.
#[test]
fn two_peak_profile_qualitative() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let coins = CoinSequence::power_law(3.0).unwrap();
    let state = evolve(c(s, 0.0), c(s, 0.0), 200, WalkKind::H1, &coins).unwrap();
    let mu = distribution(&state);
    let near: f64 = (0..=10i64).map(|j| mu.prob(j)).sum();
    let front: f64 = (190..=200i64).map(|j| mu.prob(j)).sum();
    let middle: f64 = (80..=120i64).map(|j| mu.prob(j)).sum::<f64>() / 41.0 * 11.0;
    let ok = near > 5.0 * middle && front > 5.0 * middle && near > 0.05 && front > 0.5;
    report("fig two-peak", ok);
    assert!(ok, "near={near} front={front} middle={middle}");
}

//! Command-line front end: runs simulations, evaluates spectra and closed
//! forms, compares simulation against theory, and emits CSV or JSON tables.
//!
//! Exit codes: 0 success, 1 check failure, 2 configuration error,
//! 3 numerical non-convergence. Output is deterministic for a fixed
//! configuration: summation orders and grids are fixed, and `--jobs` only
//! parallelizes independent cells that are merged back in index order.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qwalk_core::{
    bridge_check, cmv_walk_correspondence, decomposition_terms, distribution, doubling_check,
    dual_distribution, evolve, h2_bottom_profile, h2_origin_profile, ld_log_prob, ld_rate,
    passage_weights, CoinSequence, CoinState, Error as CoreError, GenFun, HomogeneousLimits,
    PowerLawModel, SpectralAnalyzer, WalkKind,
};

type C64 = Complex64;

/// A complex number parsed from `re` or `re,im`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CValue {
    pub re: f64,
    pub im: f64,
}

impl CValue {
    pub fn to_c64(self) -> C64 {
        C64::new(self.re, self.im)
    }
}

impl FromStr for CValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(',');
        let re: f64 = parts
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| format!("bad complex component in {s:?}"))?;
        let im: f64 = match parts.next() {
            Some(p) => p.trim().parse().map_err(|_| format!("bad complex component in {s:?}"))?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(format!("expected re or re,im, got {s:?}"));
        }
        Ok(CValue { re, im })
    }
}

impl fmt::Display for CValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re, self.im)
    }
}

impl TryFrom<String> for CValue {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<CValue> for String {
    fn from(v: CValue) -> String {
        v.to_string()
    }
}

/// Coin sequence specification:
/// `powerlaw:r`, `homogeneous:re,im`, `zero`, or `file:path`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CoinSpec {
    PowerLaw(f64),
    Homogeneous(CValue),
    Zero,
    File(PathBuf),
}

impl FromStr for CoinSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "zero" {
            return Ok(CoinSpec::Zero);
        }
        if let Some(r) = s.strip_prefix("powerlaw:") {
            let r: f64 = r.parse().map_err(|_| format!("bad power-law parameter in {s:?}"))?;
            return Ok(CoinSpec::PowerLaw(r));
        }
        if let Some(g) = s.strip_prefix("homogeneous:") {
            return Ok(CoinSpec::Homogeneous(g.parse()?));
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(CoinSpec::File(PathBuf::from(p)));
        }
        Err(format!("unknown coin spec {s:?} (powerlaw:r | homogeneous:re,im | zero | file:path)"))
    }
}

impl fmt::Display for CoinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinSpec::PowerLaw(r) => write!(f, "powerlaw:{r}"),
            CoinSpec::Homogeneous(g) => write!(f, "homogeneous:{g}"),
            CoinSpec::Zero => write!(f, "zero"),
            CoinSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl TryFrom<String> for CoinSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<CoinSpec> for String {
    fn from(c: CoinSpec) -> String {
        c.to_string()
    }
}

impl CoinSpec {
    /// Builds the coin sequence, reading and validating `file:` specs
    /// (one complex per line, `re im`, site index = line number).
    pub fn resolve(&self) -> Result<CoinSequence, CliError> {
        match self {
            CoinSpec::PowerLaw(r) => CoinSequence::power_law(*r).map_err(config_err),
            CoinSpec::Homogeneous(g) => CoinSequence::homogeneous(g.to_c64()).map_err(config_err),
            CoinSpec::Zero => Ok(CoinSequence::Zero),
            CoinSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                let mut gammas = Vec::new();
                for (lineno, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() {
                        continue;
                    }
                    let mut it = line.split_whitespace();
                    let re: f64 = it
                        .next()
                        .unwrap()
                        .parse()
                        .map_err(|_| bad_coin_line(path, lineno))?;
                    let im: f64 = match it.next() {
                        Some(t) => t.parse().map_err(|_| bad_coin_line(path, lineno))?,
                        None => 0.0,
                    };
                    if it.next().is_some() {
                        return Err(bad_coin_line(path, lineno));
                    }
                    gammas.push(C64::new(re, im));
                }
                CoinSequence::explicit(0, gammas).map_err(config_err)
            }
        }
    }
}

fn bad_coin_line(path: &std::path::Path, lineno: usize) -> CliError {
    CliError::Config(format!("bad coin entry at {}:{}", path.display(), lineno + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkArg {
    H1,
    H2,
    D,
}

impl WalkArg {
    pub fn kind(self) -> WalkKind {
        match self {
            WalkArg::H1 => WalkKind::H1,
            WalkArg::H2 => WalkKind::H2,
            WalkArg::D => WalkKind::D,
        }
    }
}

impl fmt::Display for WalkArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkArg::H1 => write!(f, "h1"),
            WalkArg::H2 => write!(f, "h2"),
            WalkArg::D => write!(f, "d"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[command(name = "qwalk", about = "Coined quantum walk simulations and spectral analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Run a walk and write the site distribution and its front-indexed dual.
    Simulate(SimulateArgs),
    /// Sample the spectral measure: weight grid plus point masses.
    Spectrum(SpectrumArgs),
    /// Compare a simulated distribution against closed-form limit profiles.
    Compare(CompareArgs),
    /// Fit the exponential tail decay rate and compare it to the closed form.
    Ldrate(LdrateArgs),
    /// Run the identity checks and report machine-readable pass/fail.
    Verify(VerifyArgs),
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub walk: WalkArg,
    #[arg(long)]
    pub coin: CoinSpec,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: CValue,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: CValue,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub coin: CoinSpec,
    /// Number of midpoint grid angles on [0, 2pi).
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// Comma-separated candidate angles for point masses.
    #[arg(long, default_value = "0", value_delimiter = ',', allow_hyphen_values = true)]
    pub mass_angles: Vec<f64>,
    /// Fail (exit 3) on any non-convergent grid point instead of flagging it.
    #[arg(long, default_value_t = false)]
    pub strict: bool,
    /// Cap on the continued-fraction depth (also settable via QWALK_DEPTH).
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub walk: WalkArg,
    /// Must be a spec with closed-form profiles (powerlaw or homogeneous).
    #[arg(long)]
    pub coin: CoinSpec,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: CValue,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: CValue,
    /// Number of sites tabulated from each end.
    #[arg(long, default_value_t = 40)]
    pub sites: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LdrateArgs {
    /// Power-law parameter r > 1.
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value = "0.2,0.4,0.6", value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long = "n-list", default_value = "400,800,1600", value_delimiter = ',')]
    pub n_list: Vec<u64>,
    /// Use the state orthogonal to the localization direction computed
    /// from r (required unless alpha/beta give such a state).
    #[arg(long, default_value_t = false)]
    pub auto_ortho: bool,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: CValue,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: CValue,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "powerlaw:3")]
    pub coin: CoinSpec,
    /// Overrides the 1e-10 identity thresholds.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad input files, invalid states: exit 2.
    Config(String),
    /// A limit or continued fraction failed to settle: exit 3.
    NonConvergent(String),
}

fn config_err(e: CoreError) -> CliError {
    CliError::Config(e.to_string())
}

fn core_err(e: CoreError) -> CliError {
    match e {
        CoreError::NonConvergent(m) => CliError::NonConvergent(m),
        CoreError::Singular(m) => CliError::NonConvergent(m),
        other => CliError::Config(other.to_string()),
    }
}

/// Depth override: the `--depth` flag wins, then `QWALK_DEPTH`.
fn effective_depth(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("QWALK_DEPTH").ok().and_then(|v| v.parse().ok()))
}

fn run_pool<T: Send, F: Fn(usize) -> T + Sync>(jobs: usize, count: usize, f: F) -> Vec<T> {
    if jobs <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap();
    pool.install(|| {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(|i| f(i)).collect()
    })
}

fn write_artifact(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Runs the parsed command; the return value is the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Ldrate(a) => cmd_ldrate(a),
        Command::Verify(a) => {
            return match cmd_verify(a) {
                Ok(all_pass) => {
                    if all_pass {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => report_err(e),
            }
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => report_err(e),
    }
}

fn report_err(e: CliError) -> i32 {
    match e {
        CliError::Config(m) => {
            eprintln!("error: {m}");
            2
        }
        CliError::NonConvergent(m) => {
            eprintln!("error: {m}");
            3
        }
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let coins = args.coin.resolve()?;
    let state = evolve(
        args.alpha.to_c64(),
        args.beta.to_c64(),
        args.n,
        args.walk.kind(),
        &coins,
    )
    .map_err(core_err)?;
    let mu = distribution(&state);
    let dual = dual_distribution(&state);
    let n = args.n as i64;
    let mut rows = Vec::new();
    let mut sum = 0.0f64;
    for j in mu.min_site()..=mu.max_site() {
        let p = mu.prob(j);
        sum += p;
        rows.push((j, p, n - j, dual.prob(n - j)));
    }
    let content = match args.out.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str("# command: simulate\n");
            s.push_str(&format!("# walk: {}\n", args.walk));
            s.push_str(&format!("# coin: {}\n", args.coin));
            s.push_str(&format!("# n: {}\n", args.n));
            s.push_str(&format!("# alpha: {}\n", args.alpha));
            s.push_str(&format!("# beta: {}\n", args.beta));
            s.push_str("j,prob,dual_j,dual_prob\n");
            for (j, p, dj, dp) in &rows {
                s.push_str(&format!("{j},{p},{dj},{dp}\n"));
            }
            s.push_str(&format!("# prob_sum: {sum}\n"));
            s
        }
        OutputFormat::Json => {
            let json = serde_json::json!({
                "metadata": {
                    "command": "simulate",
                    "walk": args.walk.to_string(),
                    "coin": args.coin.to_string(),
                    "n": args.n,
                    "alpha": {"re": args.alpha.re, "im": args.alpha.im},
                    "beta": {"re": args.beta.re, "im": args.beta.im},
                },
                "rows": rows.iter().map(|(j, p, dj, dp)| serde_json::json!({
                    "j": j, "prob": p, "dual_j": dj, "dual_prob": dp,
                })).collect::<Vec<_>>(),
                "prob_sum": sum,
            });
            format!("{}\n", serde_json::to_string_pretty(&json).unwrap())
        }
    };
    write_artifact(&args.out.output, &content)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    if args.grid == 0 {
        return Err(CliError::Config("grid size must be positive".into()));
    }
    let coins = args.coin.resolve()?;
    let mut analyzer = SpectralAnalyzer::new(coins);
    if let Some(d) = effective_depth(args.depth) {
        analyzer = analyzer.with_max_depth(d);
    }
    let analyzer = &analyzer;
    let grid = args.grid;
    let weights: Vec<(f64, Result<f64, CoreError>)> = run_pool(args.jobs, grid, |i| {
        let theta = std::f64::consts::TAU * (i as f64 + 0.5) / grid as f64;
        (theta, analyzer.ac_weight(theta))
    });
    let masses: Vec<(f64, Result<f64, CoreError>)> = args
        .mass_angles
        .iter()
        .map(|&theta| (theta, analyzer.mass_at(theta)))
        .collect();
    if args.strict {
        for (theta, res) in weights.iter().chain(&masses) {
            if let Err(e) = res {
                return Err(CliError::NonConvergent(format!("theta = {theta}: {e}")));
            }
        }
    } else if weights.iter().all(|(_, r)| r.is_err()) {
        // Non-strict mode flags isolated bad points, but a depth cap that
        // prevents every evaluation is still fatal.
        let (theta, res) = &weights[0];
        if let Err(e) = res {
            return Err(CliError::NonConvergent(format!("theta = {theta}: {e}")));
        }
    }
    let ok_weights: Vec<f64> = weights.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).collect();
    let mass_sum: f64 = masses.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).sum();
    let residual = if ok_weights.is_empty() {
        f64::NAN
    } else {
        (ok_weights.iter().sum::<f64>() / ok_weights.len() as f64 + mass_sum - 1.0).abs()
    };
    let status = |r: &Result<f64, CoreError>| match r {
        Ok(_) => "ok",
        Err(CoreError::Singular(_)) => "singular",
        Err(_) => "nonconvergent",
    };
    let content = match args.out.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str("# command: spectrum\n");
            s.push_str(&format!("# coin: {}\n", args.coin));
            s.push_str(&format!("# grid: {}\n", args.grid));
            s.push_str("theta,weight,status\n");
            for (theta, res) in &weights {
                match res {
                    Ok(w) => s.push_str(&format!("{theta},{w},ok\n")),
                    Err(_) => s.push_str(&format!("{theta},,{}\n", status(res))),
                }
            }
            s.push_str("# masses\n");
            s.push_str("theta,mass\n");
            for (theta, res) in &masses {
                if let Ok(m) = res {
                    if *m > 0.0 {
                        s.push_str(&format!("{theta},{m}\n"));
                    }
                }
            }
            s.push_str(&format!("# normalization_residual: {residual}\n"));
            s
        }
        OutputFormat::Json => {
            let json = serde_json::json!({
                "metadata": {
                    "command": "spectrum",
                    "coin": args.coin.to_string(),
                    "grid": args.grid,
                    "normalization_residual": residual,
                },
                "weights": weights.iter().map(|(t, r)| serde_json::json!({
                    "theta": t,
                    "weight": r.as_ref().ok(),
                    "status": status(r),
                })).collect::<Vec<_>>(),
                "masses": masses.iter().filter_map(|(t, r)| match r {
                    Ok(m) if *m > 0.0 => Some(serde_json::json!({"theta": t, "mass": m})),
                    _ => None,
                }).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&json).unwrap())
        }
    };
    write_artifact(&args.out.output, &content)
}

struct CompareRow {
    j: i64,
    simulated: f64,
    predicted: f64,
}

impl CompareRow {
    fn residual(&self) -> f64 {
        (self.simulated - self.predicted).abs()
    }
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let kind = args.walk.kind();
    if kind == WalkKind::D {
        return Err(CliError::Config(
            "closed-form profile comparison supports half-line walks only".into(),
        ));
    }
    let coins = args.coin.resolve()?;
    let state_vec = evolve(args.alpha.to_c64(), args.beta.to_c64(), args.n, kind, &coins)
        .map_err(core_err)?;
    let mu = distribution(&state_vec);
    let dual = dual_distribution(&state_vec);
    let state = CoinState::new(args.alpha.to_c64(), args.beta.to_c64()).map_err(config_err)?;
    let sites = args.sites as i64;
    let n = args.n;

    let mut origin_rows = Vec::new();
    let mut bottom_rows = Vec::new();
    let mut summary: Vec<(String, f64)> = Vec::new();
    match &args.coin {
        CoinSpec::PowerLaw(r) => {
            let model = PowerLawModel::new(*r).map_err(config_err)?;
            for j in 0..=sites {
                let predicted = match kind {
                    WalkKind::H1 => qwalk_core::origin_profile(&model, &state, j as u64),
                    // Even-parity subsequence limit; odd parity tends to zero.
                    _ => {
                        if (n + j as u64) % 2 == 0 {
                            h2_origin_profile(&model, j as u64)
                        } else {
                            0.0
                        }
                    }
                };
                origin_rows.push(CompareRow { j, simulated: mu.prob(j), predicted });
            }
            for j in 0..=sites {
                let predicted = match kind {
                    WalkKind::H1 => qwalk_core::bottom_profile(&model, &state, j as u64),
                    _ => {
                        if (n + (n - j as u64)) % 2 == 0 {
                            h2_bottom_profile(&model, j as u64)
                        } else {
                            0.0
                        }
                    }
                };
                bottom_rows.push(CompareRow { j, simulated: dual.prob(j), predicted });
            }
            let c0_partial: f64 = origin_rows.iter().map(|r| r.simulated).sum();
            let c1_partial: f64 = bottom_rows.iter().map(|r| r.simulated).sum();
            let (c0, c1) = match kind {
                WalkKind::H1 => qwalk_core::limit_constants(&model, &state),
                _ => qwalk_core::h2_limit_constants(&model),
            };
            summary.push(("c0_partial".into(), c0_partial));
            summary.push(("c1_partial".into(), c1_partial));
            summary.push(("c0_predicted".into(), c0));
            summary.push(("c1_predicted".into(), c1));
        }
        CoinSpec::Homogeneous(g) => {
            let lim = HomogeneousLimits::new(kind, g.to_c64(), state).map_err(config_err)?;
            for j in 0..=sites {
                let predicted = match kind {
                    WalkKind::H1 => lim.localization_profile(j as u64),
                    _ => {
                        if (n + j as u64) % 2 == 0 {
                            lim.localization_profile(j as u64)
                        } else {
                            0.0
                        }
                    }
                };
                origin_rows.push(CompareRow { j, simulated: mu.prob(j), predicted });
            }
            let partial: f64 = origin_rows.iter().map(|r| r.simulated).sum();
            summary.push(("localized_mass_partial".into(), partial));
            summary.push(("localized_mass_predicted".into(), lim.localized_mass()));
        }
        other => {
            return Err(CliError::Config(format!(
                "no closed-form profiles for coin spec {other}"
            )));
        }
    }
    let max_residual = origin_rows
        .iter()
        .chain(&bottom_rows)
        .map(CompareRow::residual)
        .fold(0.0f64, f64::max);

    let content = match args.out.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str("# command: compare\n");
            s.push_str(&format!("# walk: {}\n", args.walk));
            s.push_str(&format!("# coin: {}\n", args.coin));
            s.push_str(&format!("# n: {}\n", args.n));
            s.push_str(&format!("# alpha: {}\n", args.alpha));
            s.push_str(&format!("# beta: {}\n", args.beta));
            s.push_str("# section: origin\n");
            s.push_str("j,simulated,predicted,residual\n");
            for r in &origin_rows {
                s.push_str(&format!("{},{},{},{}\n", r.j, r.simulated, r.predicted, r.residual()));
            }
            if !bottom_rows.is_empty() {
                s.push_str("# section: bottom\n");
                s.push_str("j,simulated,predicted,residual\n");
                for r in &bottom_rows {
                    s.push_str(&format!(
                        "{},{},{},{}\n",
                        r.j,
                        r.simulated,
                        r.predicted,
                        r.residual()
                    ));
                }
            }
            s.push_str(&format!("# max_residual: {max_residual}\n"));
            for (k, v) in &summary {
                s.push_str(&format!("# {k}: {v}\n"));
            }
            s
        }
        OutputFormat::Json => {
            let row_json = |r: &CompareRow| {
                serde_json::json!({
                    "j": r.j,
                    "simulated": r.simulated,
                    "predicted": r.predicted,
                    "residual": r.residual(),
                })
            };
            let json = serde_json::json!({
                "metadata": {
                    "command": "compare",
                    "walk": args.walk.to_string(),
                    "coin": args.coin.to_string(),
                    "n": args.n,
                    "alpha": {"re": args.alpha.re, "im": args.alpha.im},
                    "beta": {"re": args.beta.re, "im": args.beta.im},
                },
                "origin": origin_rows.iter().map(row_json).collect::<Vec<_>>(),
                "bottom": bottom_rows.iter().map(row_json).collect::<Vec<_>>(),
                "max_residual": max_residual,
                "summary": summary.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&json).unwrap())
        }
    };
    write_artifact(&args.out.output, &content)
}

fn cmd_ldrate(args: &LdrateArgs) -> Result<(), CliError> {
    let model = PowerLawModel::new(args.r).map_err(config_err)?;
    let state = if args.auto_ortho {
        CoinState::delocalized(&model)
    } else {
        let s = CoinState::new(args.alpha.to_c64(), args.beta.to_c64()).map_err(config_err)?;
        if s.localization_overlap_sq(&model) > 1e-20 {
            return Err(CliError::Config(
                "initial state must be orthogonal to the localization direction \
                 (use --auto-ortho)"
                    .into(),
            ));
        }
        s
    };
    for &eps in &args.eps {
        if !(0.0..1.0).contains(&eps) {
            return Err(CliError::Config(format!("eps = {eps} not in [0, 1)")));
        }
    }
    if args.n_list.len() < 2 && args.eps.iter().any(|&e| e > 0.0) {
        return Err(CliError::Config("need at least two n values to fit a slope".into()));
    }

    // Flattened (eps, n) grid so --jobs can spread the heavy evaluations.
    let cells: Vec<(f64, u64)> = args
        .eps
        .iter()
        .flat_map(|&e| args.n_list.iter().map(move |&n| (e, n)))
        .filter(|&(e, _)| e > 0.0)
        .collect();
    let values: Vec<Result<f64, CoreError>> = run_pool(args.jobs, cells.len(), |i| {
        let (eps, n) = cells[i];
        ld_log_prob(&model, &state, n, eps)
    });
    let mut rows = Vec::new();
    for (&(eps, n), v) in cells.iter().zip(&values) {
        let lp = *v.as_ref().map_err(|e| CliError::NonConvergent(e.to_string()))?;
        rows.push((eps, n, lp));
    }

    let mut fits = Vec::new();
    for &eps in &args.eps {
        if eps == 0.0 {
            fits.push((eps, 0.0, 0.0, 0.0));
            continue;
        }
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|&&(e, _, _)| e == eps)
            .map(|&(_, n, lp)| (n as f64, lp))
            .collect();
        let xm = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let ym = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let num: f64 = pts.iter().map(|(x, y)| (x - xm) * (y - ym)).sum();
        let den: f64 = pts.iter().map(|(x, _)| (x - xm).powi(2)).sum();
        let slope = num / den;
        let rate = ld_rate(&model, eps).map_err(core_err)?;
        fits.push((eps, slope, rate, ((slope - rate) / rate).abs()));
    }

    let content = match args.out.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str("# command: ldrate\n");
            s.push_str(&format!("# r: {}\n", args.r));
            s.push_str("# method: log-domain accumulation over the exact splitting\n");
            s.push_str("eps,n,log_prob,log_prob_over_n\n");
            for (eps, n, lp) in &rows {
                s.push_str(&format!("{eps},{n},{lp},{}\n", lp / *n as f64));
            }
            s.push_str("# section: fits\n");
            s.push_str("eps,fitted_slope,theoretical_rate,relative_error\n");
            for (eps, slope, rate, rel) in &fits {
                s.push_str(&format!("{eps},{slope},{rate},{rel}\n"));
            }
            s
        }
        OutputFormat::Json => {
            let json = serde_json::json!({
                "metadata": {
                    "command": "ldrate",
                    "r": args.r,
                    "method": "log-domain accumulation over the exact splitting",
                },
                "rows": rows.iter().map(|(eps, n, lp)| serde_json::json!({
                    "eps": eps, "n": n, "log_prob": lp, "log_prob_over_n": lp / *n as f64,
                })).collect::<Vec<_>>(),
                "fits": fits.iter().map(|(eps, slope, rate, rel)| serde_json::json!({
                    "eps": eps,
                    "fitted_slope": slope,
                    "theoretical_rate": rate,
                    "relative_error": rel,
                })).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&json).unwrap())
        }
    };
    write_artifact(&args.out.output, &content)
}

struct Check {
    name: &'static str,
    residual: f64,
    threshold: f64,
}

/// Runs the identity checks; returns whether all passed.
fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let coins = args.coin.resolve()?;
    let tol = args.tolerance.unwrap_or(1e-10);
    let mut checks = Vec::new();

    // Series coefficients against the walk recursion, all kinds, n <= 20.
    let order = 20usize;
    let mut worst = 0.0f64;
    for kind in [WalkKind::H1, WalkKind::H2, WalkKind::D] {
        let gf = GenFun::new(kind, coins.clone());
        let weights: Vec<_> =
            (0..=order as u64).map(|n| passage_weights(n, kind, &coins)).collect();
        let range =
            if kind == WalkKind::D { -(order as i64)..=order as i64 } else { 0..=order as i64 };
        for j in range {
            let ser = gf.xi_series(j, order).map_err(core_err)?;
            for n in 0..=order {
                worst = worst.max(ser.coeff(n).max_abs_diff(&weights[n].xi(j)));
            }
        }
    }
    checks.push(Check { name: "series-vs-weights", residual: worst, threshold: tol });

    // Bridge identity on a fixed fan of evaluation points.
    let mut worst = 0.0f64;
    for k in 0..7 {
        let z = C64::from_polar(0.8, std::f64::consts::TAU * k as f64 / 7.0);
        for j in -2i64..=3 {
            worst = worst.max(bridge_check(&coins, j, z).map_err(core_err)?);
        }
    }
    checks.push(Check { name: "bridge-identity", residual: worst, threshold: tol });

    // Half-line/line doubling relation.
    let mut worst = 0.0f64;
    for k in 0..7 {
        let z = C64::from_polar(0.7, std::f64::consts::TAU * k as f64 / 7.0 + 0.1);
        for j in 0i64..=3 {
            worst = worst.max(doubling_check(&coins, j, z).map_err(core_err)?);
        }
    }
    checks.push(Check { name: "doubling-relation", residual: worst, threshold: tol });

    checks.push(Check {
        name: "cmv-correspondence",
        residual: cmv_walk_correspondence(&coins, 100).map_err(core_err)?,
        threshold: args.tolerance.unwrap_or(1e-12),
    });

    if let CoinSpec::PowerLaw(r) = &args.coin {
        let model = PowerLawModel::new(*r).map_err(config_err)?;
        let mut worst = 0.0f64;
        for n in 0..=60u64 {
            let weights = passage_weights(n, WalkKind::H1, &coins);
            for j in 0..=n {
                let d = decomposition_terms(&model, n, j);
                let total = d.bottom + d.origin + d.interior;
                worst = worst.max(total.max_abs_diff(&weights.xi(j as i64)));
            }
        }
        checks.push(Check { name: "decomposition", residual: worst, threshold: tol });

        let analyzer = SpectralAnalyzer::new(coins.clone());
        let mu = analyzer.measure(128, &[0.0]).map_err(core_err)?;
        checks.push(Check {
            name: "spectral-normalization",
            residual: mu.normalization_residual(),
            threshold: args.tolerance.unwrap_or(1e-6),
        });
    }

    let all_pass = checks.iter().all(|c| c.residual < c.threshold);
    let json = serde_json::json!({
        "coin": args.coin.to_string(),
        "checks": checks.iter().map(|c| serde_json::json!({
            "name": c.name,
            "residual": c.residual,
            "threshold": c.threshold,
            "pass": c.residual < c.threshold,
        })).collect::<Vec<_>>(),
        "pass": all_pass,
    });
    write_artifact(&args.output, &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()))?;
    Ok(all_pass)
}

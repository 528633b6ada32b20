//! Batch command-line interface.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 a check failed
//! (`--check`, or any oracle mismatch), 4 I/O failure, 5 resource guard.

pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dependent::{
    chernoff_bound, dependent_bounds, f_bounds, falling_ratio, joint_bound_a1a2, lis_length, lis_witness,
    mean_bounds_tn, mean_bounds_xt, mu_t, prob_a1c_bounds, prob_a1c_exact, prob_joint_a1a2_exact,
    tail_bound_general, var_bound_xt, BoundsReport, Regime,
};
use crate::bound::formulas;
use crate::error::{Error, Result};
use crate::graph::{sample_colouring, sample_injection, PlanarMatching};
use crate::montecarlo::{
    summarize_dependent, summarize_rainbow, verify_a1c_suite, verify_joint_suite, verify_lis_suite,
    verify_rainbow_suite, CheckStatus, ExperimentConfig, ExperimentReport, Runner, SegmentSize, Solver,
    SuiteOutcome, SweepReport, DEFAULT_EPS,
};
use crate::rainbow::{
    alpha0, binary_entropy, is_rainbow, lower_tail_bound, max_rainbow_exact, rainbow_prob, rainbow_prob_upper,
    upper_tail_bound,
};
use crate::rng::Seed;

use output::{DependentRows, RainbowRows, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "planarmatch", version, about = "Rainbow and dependent planar matchings of random bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo estimate of R_n on uniformly coloured K_{n,n}.
    RainbowSim(RainbowSimArgs),
    /// Monte Carlo estimate of T_n (and X_t) for uniform injections {1..n} -> {1..k}.
    DependentSim(DependentSimArgs),
    /// Evaluate analytic bounds at given parameters.
    Bounds(BoundsArgs),
    /// Solve one sampled instance exactly and print the witness.
    Exact(ExactArgs),
    /// Compare closed forms and solvers against exhaustive enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// JSON report path; the report goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-trial CSV path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// SVG scatter of the statistic against n.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Exit with status 3 if any check fails.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct RainbowSimArgs {
    /// Vertex count; a comma-separated list runs a sweep.
    #[arg(long, required = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Number of colours.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub r: Option<u32>,
    /// Colour density; r = round(alpha n).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Solver::Exact)]
    pub solver: Solver,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DependentSimArgs {
    /// Bottom vertex count; a comma-separated list runs a sweep.
    #[arg(long, required = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Top vertex count (defaults to n).
    #[arg(long)]
    pub k: Option<usize>,
    /// Segment size for X_t: an integer or `sqrt`.
    #[arg(long)]
    pub t: Option<SegmentSize>,
    /// Tail parameter b for P(T_n >= sqrt(n / (b ln n))).
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Which {
    /// P(A1^c) exactly: --k --s --t
    A1c,
    /// Sandwich on P(A1^c): --k --s --t
    PaOne,
    /// Correlation bound on P(A1^c & A2^c): --k --s --t
    PaTwo,
    /// Exact joint avoidance probability: --k --s --t
    Joint,
    /// --n --t
    MuT,
    /// Bounds on E[X_t]: --n --k --t
    MeanXt,
    /// Bounds on E[T_n]: --n --eps
    MeanTn,
    /// Lower tail of T_n: --n --b
    Tail,
    /// Two-sided Chernoff bound: --theta --gamma
    Chernoff,
    /// D (sqrt(n) + n^2/k): --n --k --d
    VarXt,
    /// Probability that t edges are rainbow, and its upper bound: --t --r
    RainbowProb,
    /// Binary entropy in nats: --x
    Entropy,
    Alpha0,
    /// P(R_n > (1-eps) r) bound: --n --alpha --eps
    UpperTail,
    /// P(R_n <= eps r) bound: --n --alpha --eps
    LowerTail,
    /// f(a,b,c) = (a-b)_c / (a)_c and its bounds: --a --b --c
    FallingRatio,
    /// Every dependent-model quantity: --n [--k] [--t] [--eps] [--b]
    Dependent,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long)]
    pub d: Option<f64>,
    /// Also write the values as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactMode {
    Rainbow,
    Dependent,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub mode: ExactMode,
    #[arg(long)]
    pub n: usize,
    /// Colours (rainbow mode).
    #[arg(long)]
    pub r: Option<u32>,
    /// Top vertex count (dependent mode, defaults to n).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    A1c,
    Joint,
    Rainbow,
    Lis,
    All,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest k enumerated (a1c: 9, joint: 12 by default).
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Largest t for the joint suite.
    #[arg(long, default_value_t = 2)]
    pub t: u64,
    /// Largest n for the rainbow (default 6) and lis (default 200) suites.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest r for the rainbow suite.
    #[arg(long, default_value_t = 6)]
    pub r: u32,
    /// Random instances for the rainbow and lis suites.
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::NonIntegralSegment { .. } | Error::EmptyRange(_) => EXIT_USAGE,
        Error::Io(_) | Error::Serialization(_) => EXIT_IO,
        Error::ResourceGuard { .. } => EXIT_RESOURCE,
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::RainbowSim(a) => rainbow_sim(a, out),
        Command::DependentSim(a) => dependent_sim(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Exact(a) => exact(a, out),
        Command::OracleCheck(a) => oracle_check(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn runner() -> Result<Runner> {
    Runner::from_env()
}

fn emit_report<T: Serialize>(value: &T, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let json = output::to_json(value)?;
    match path {
        Some(p) => output::write_file(p, &json),
        None => Ok(out.write_all(json.as_bytes())?),
    }
}

fn print_checks(reports: &[ExperimentReport], out: &mut dyn Write) -> Result<()> {
    for rep in reports {
        for c in &rep.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Flagged => "flagged",
            };
            let analytic = c.analytic.map(|a| format!("{a:.6}")).unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "n={:<8} {:<16} {:<8} empirical {:.6}  analytic {}  tolerance {:.6}",
                rep.config.n, c.name, status, c.empirical, analytic, c.tolerance
            )?;
        }
    }
    Ok(())
}

fn finish(reports: Vec<ExperimentReport>, output: &OutputArgs, out: &mut dyn Write) -> Result<i32> {
    let passed = reports.iter().all(ExperimentReport::all_passed);
    if output.out.is_some() {
        print_checks(&reports, out)?;
    }
    if reports.len() == 1 {
        emit_report(&reports[0], output.out.as_ref(), out)?;
    } else {
        emit_report(&SweepReport::new(reports), output.out.as_ref(), out)?;
    }
    Ok(if output.check && !passed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn means(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut groups: Vec<(f64, f64, usize)> = Vec::new();
    for &(x, y) in points {
        match groups.last_mut() {
            Some(g) if g.0 == x => {
                g.1 += y;
                g.2 += 1;
            }
            _ => groups.push((x, y, 1)),
        }
    }
    groups.into_iter().map(|(x, sum, c)| (x, sum / c as f64)).collect()
}

fn rainbow_sim(a: &RainbowSimArgs, out: &mut dyn Write) -> Result<i32> {
    let runner = runner()?;
    let mut configs = Vec::new();
    for &n in &a.n {
        let cfg = match (a.r, a.alpha) {
            (Some(r), _) => ExperimentConfig::rainbow(n, r, a.trials, a.seed, a.solver),
            (None, Some(alpha)) => ExperimentConfig::rainbow_alpha(n, alpha, a.trials, a.seed, a.solver),
            (None, None) => return Err(Error::invalid("give --r or --alpha")),
        };
        let cfg = cfg.with_eps(a.eps);
        cfg.validate()?;
        configs.push(cfg);
    }
    let mut reports = Vec::new();
    let mut runs = Vec::new();
    for cfg in &configs {
        let trials = runner.simulate_rainbow(cfg)?;
        reports.push(summarize_rainbow(cfg, &trials)?);
        runs.push((cfg.n, cfg.colours()?, trials));
    }
    if let Some(path) = &a.output.csv {
        let rows: Vec<RainbowRows<'_>> =
            runs.iter().map(|(n, r, t)| RainbowRows { n: *n, r: *r, trials: t }).collect();
        output::write_rainbow_csv(path, &rows)?;
    }
    if let Some(path) = &a.output.svg {
        let points: Vec<(f64, f64)> = runs
            .iter()
            .flat_map(|(n, _, t)| t.iter().map(move |x| (*n as f64, x.r_n as f64)))
            .collect();
        let series = Series {
            label: "R_n".into(),
            colour: "#c0392b",
            means: means(&points),
            points,
        };
        let svg = output::scatter_svg(&format!("R_n against n ({:?} solver)", a.solver).to_lowercase(), "R_n", &[series]);
        output::write_file(path, &svg)?;
    }
    finish(reports, &a.output, out)
}

fn dependent_sim(a: &DependentSimArgs, out: &mut dyn Write) -> Result<i32> {
    let runner = runner()?;
    let mut configs = Vec::new();
    for &n in &a.n {
        let mut cfg = ExperimentConfig::dependent(n, a.k.unwrap_or(n), a.trials, a.seed).with_eps(a.eps);
        if let Some(t) = a.t {
            cfg = cfg.with_t(t);
        }
        if let Some(b) = a.b {
            cfg = cfg.with_b(b);
        }
        cfg.validate()?;
        crate::montecarlo::resolve_segment(&cfg)?;
        configs.push(cfg);
    }
    let mut reports = Vec::new();
    let mut runs = Vec::new();
    for cfg in &configs {
        let (segment, trials) = runner.simulate_dependent(cfg)?;
        reports.push(summarize_dependent(cfg, segment, &trials)?);
        runs.push((cfg.n, cfg.k.unwrap_or(cfg.n), segment, trials));
    }
    if let Some(path) = &a.output.csv {
        let rows: Vec<DependentRows<'_>> = runs
            .iter()
            .map(|(n, k, segment, t)| DependentRows { n: *n, k: *k, segment: *segment, trials: t })
            .collect();
        output::write_dependent_csv(path, &rows)?;
    }
    if let Some(path) = &a.output.svg {
        let t_points: Vec<(f64, f64)> = runs
            .iter()
            .flat_map(|(n, _, _, t)| t.iter().map(move |x| (*n as f64, x.t_n as f64)))
            .collect();
        let x_points: Vec<(f64, f64)> = runs
            .iter()
            .flat_map(|(n, _, _, t)| t.iter().filter_map(move |x| x.x_t.map(|v| (*n as f64, v as f64))))
            .collect();
        let mut series = vec![Series {
            label: "T_n".into(),
            colour: "#1f77b4",
            means: means(&t_points),
            points: t_points,
        }];
        if !x_points.is_empty() {
            series.push(Series {
                label: "X_t".into(),
                colour: "#ff7f0e",
                means: means(&x_points),
                points: x_points,
            });
        }
        output::write_file(path, &output::scatter_svg("T_n and X_t against n", "size", &series))?;
    }
    finish(reports, &a.output, out)
}

fn need<T: Copy>(v: Option<T>, flag: &str, which: Which) -> Result<T> {
    v.ok_or_else(|| {
        let name = which.to_possible_value().map(|p| p.get_name().to_owned()).unwrap_or_default();
        Error::invalid(format!("--which {name} needs --{flag}"))
    })
}

fn in_regime(ok: bool) -> Regime {
    if ok {
        Regime::InRegime
    } else {
        Regime::OutOfRegime
    }
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let w = a.which;
    let mut rep = BoundsReport::default();
    match w {
        Which::A1c => {
            let (k, s, t) = (need(a.k, "k", w)?, need(a.s, "s", w)?, need(a.t, "t", w)?);
            rep.push("p_a1c_exact", formulas::A1C_EXACT, prob_a1c_exact(k, s, t)?, None, Regime::InRegime);
        }
        Which::PaOne => {
            let (k, s, t) = (need(a.k, "k", w)?, need(a.s, "s", w)?, need(a.t, "t", w)?);
            let b = prob_a1c_bounds(k, s, t)?;
            rep.push("pa_one_lower", formulas::PA_ONE, b.lower, None, in_regime(b.in_regime));
            rep.push("pa_one_upper", formulas::PA_ONE, b.upper, None, in_regime(b.in_regime));
            rep.push("p_a1c_exact", formulas::A1C_EXACT, prob_a1c_exact(k, s, t)?, None, Regime::InRegime);
        }
        Which::PaTwo | Which::Joint => {
            let (k, s, t) = (need(a.k, "k", w)?, need(a.s, "s", w)?, need(a.t, "t", w)?);
            rep.push("p_joint_exact", formulas::JOINT_EXACT, prob_joint_a1a2_exact(k, s, t)?, None, Regime::InRegime);
            if w == Which::PaTwo {
                let b = joint_bound_a1a2(k, s, t)?;
                rep.push("pa_two", formulas::PA_TWO, b.value, Some(b.raw), in_regime(b.in_regime));
            }
            rep.push("p_a1c_exact", formulas::A1C_EXACT, prob_a1c_exact(k, s, t)?, None, Regime::InRegime);
        }
        Which::MuT => {
            let (n, t) = (need(a.n, "n", w)?, need(a.t, "t", w)?);
            rep.push("mu_t", formulas::MU_T, mu_t(n, t)?, None, Regime::InRegime);
        }
        Which::MeanXt => {
            let (n, t) = (need(a.n, "n", w)?, need(a.t, "t", w)?);
            let b = mean_bounds_xt(n, a.k.unwrap_or(n), t)?;
            rep.push("mean_xt_lower", formulas::MEAN_XT, b.lower, None, in_regime(b.in_regime));
            rep.push("mean_xt_upper", formulas::MEAN_XT, b.upper, None, in_regime(b.in_regime));
        }
        Which::MeanTn => {
            let b = mean_bounds_tn(need(a.n, "n", w)?, a.eps)?;
            let low = if b.low_vacuous { Regime::Vacuous } else { Regime::InRegime };
            rep.push("mu_low", formulas::MEAN_TN, b.mu_low.max(0.0), Some(b.mu_low), low);
            rep.push("mu_up", formulas::MEAN_TN, b.mu_up, None, Regime::InRegime);
        }
        Which::Tail => {
            let tb = tail_bound_general(need(a.n, "n", w)?, need(a.b, "b", w)?)?;
            rep.push("tail_threshold", formulas::TAIL_GENERAL, tb.threshold, None, Regime::InRegime);
            rep.push("tail_probability", formulas::TAIL_GENERAL, tb.probability, None, Regime::InRegime);
        }
        Which::Chernoff => {
            let v = chernoff_bound(need(a.theta, "theta", w)?, need(a.gamma, "gamma", w)?)?;
            rep.push("chernoff", "P(|S - theta| >= gamma theta) <= 2 exp(-gamma^2 theta / 4)", v, None, Regime::InRegime);
        }
        Which::VarXt => {
            let n = need(a.n, "n", w)?;
            let v = var_bound_xt(n, a.k.unwrap_or(n), need(a.d, "d", w)?)?;
            rep.push("var_xt", formulas::VAR_XT, v, None, Regime::Structural);
        }
        Which::RainbowProb => {
            let (t, r) = (need(a.t, "t", w)?, need(a.r, "r", w)?);
            rep.push("rainbow_prob", "P(t edges rainbow) = (r)_t / r^t", rainbow_prob(t, r)?, None, Regime::InRegime);
            if t <= r {
                let up = rainbow_prob_upper(t, r)?;
                rep.push("rainbow_prob_upper", "(r)_t / r^t <= sqrt(e) exp(-t^2 / (2r))", up, None, Regime::InRegime);
            }
        }
        Which::Entropy => {
            let x = need(a.x, "x", w)?;
            rep.push("entropy", "H(x) = -x ln x - (1-x) ln(1-x)", binary_entropy(x)?, None, Regime::InRegime);
        }
        Which::Alpha0 => rep.push("alpha0", formulas::ALPHA0, alpha0(), None, Regime::InRegime),
        Which::UpperTail => {
            let b = upper_tail_bound(need(a.n, "n", w)?, need(a.alpha, "alpha", w)?, a.eps)?;
            rep.push("upper_tail", formulas::RAINBOW_UPPER_TAIL, b.value, Some(b.raw), in_regime(b.in_regime));
        }
        Which::LowerTail => {
            let b = lower_tail_bound(need(a.n, "n", w)?, need(a.alpha, "alpha", w)?, a.eps)?;
            rep.push("lower_tail", formulas::RAINBOW_LOWER_TAIL, b.value, Some(b.raw), in_regime(b.in_regime));
        }
        Which::FallingRatio => {
            let fa = need(a.a, "a", w)?;
            let fb = need(a.b, "b", w)?;
            if !(fb >= 0.0 && fb.fract() == 0.0) {
                return Err(Error::invalid(format!("--b {fb} must be a non-negative integer here")));
            }
            let (fb, fc) = (fb as u64, need(a.c, "c", w)?);
            let f = falling_ratio(fa, fb, fc)?;
            let s = f_bounds(fa, fb, fc)?;
            rep.push("f_lower", "f(a,b,c) >= exp(-2bc/a - c^2/a)", s.lower, None, in_regime(s.in_regime));
            rep.push("f", "f(a,b,c) = (a-b)_c / (a)_c", f, None, Regime::InRegime);
            rep.push("f_upper", "f(a,b,c) <= exp(-bc/a + c^2/a)", s.upper, None, in_regime(s.in_regime));
        }
        Which::Dependent => {
            let n = need(a.n, "n", w)?;
            rep = dependent_bounds(n, a.k.unwrap_or(n), a.t, a.eps, a.b)?;
        }
    }
    for e in &rep.entries {
        let regime = match e.regime {
            Regime::InRegime => "in_regime",
            Regime::OutOfRegime => "out_of_regime",
            Regime::Vacuous => "vacuous",
            Regime::Structural => "structural",
        };
        writeln!(out, "{:<20} {:<24} {}", e.name, e.value, regime)?;
    }
    if let Some(path) = &a.out {
        output::write_file(path, &output::to_json(&rep)?)?;
    }
    Ok(EXIT_OK)
}

fn edges(m: &PlanarMatching) -> String {
    m.edges.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct ExactOutput {
    mode: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    seed: Seed,
    size: usize,
    witness: PlanarMatching,
    #[serde(skip_serializing_if = "Option::is_none")]
    colours: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<usize>>,
}

fn exact(a: &ExactArgs, out: &mut dyn Write) -> Result<i32> {
    let seed = Seed(a.seed);
    let report = match a.mode {
        ExactMode::Rainbow => {
            if a.k.is_some() {
                return Err(Error::invalid("--k applies to --mode dependent"));
            }
            let r = a.r.ok_or_else(|| Error::invalid("--mode rainbow needs --r"))?;
            let c = sample_colouring(a.n, r, seed)?;
            let sol = max_rainbow_exact(&c)?;
            if !is_rainbow(&sol.witness, &c)? {
                return Err(Error::invalid("internal: exact witness is not rainbow"));
            }
            writeln!(out, "R_n = {}", sol.size)?;
            writeln!(out, "witness: {}", edges(&sol.witness))?;
            let colours: Vec<u32> = sol.witness.edges.iter().map(|&(i, j)| c.colour(i, j)).collect();
            writeln!(out, "colours: {colours:?}")?;
            ExactOutput {
                mode: "rainbow",
                n: a.n,
                r: Some(r),
                k: None,
                seed,
                size: sol.size,
                witness: sol.witness,
                colours: Some((1..=a.n).map(|i| c.row(i).to_vec()).collect()),
                pi: None,
            }
        }
        ExactMode::Dependent => {
            if a.r.is_some() {
                return Err(Error::invalid("--r applies to --mode rainbow"));
            }
            let k = a.k.unwrap_or(a.n);
            let inj = sample_injection(a.n, k, seed)?;
            let size = lis_length(&inj);
            let witness = lis_witness(&inj);
            writeln!(out, "T_n = {size}")?;
            writeln!(out, "witness: {}", edges(&witness))?;
            ExactOutput {
                mode: "dependent",
                n: a.n,
                r: None,
                k: Some(k),
                seed,
                size,
                witness,
                colours: None,
                pi: Some(inj.values().to_vec()),
            }
        }
    };
    if let Some(path) = &a.out {
        output::write_file(path, &output::to_json(&report)?)?;
    }
    Ok(EXIT_OK)
}

fn oracle_check(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let seed = Seed(a.seed);
    let suites = match a.suite {
        Suite::All => vec![Suite::A1c, Suite::Joint, Suite::Rainbow, Suite::Lis],
        s => vec![s],
    };
    let mut outcomes: Vec<SuiteOutcome> = Vec::new();
    for suite in suites {
        let outcome = match suite {
            Suite::A1c => verify_a1c_suite(a.kmax.unwrap_or(9))?,
            Suite::Joint => verify_joint_suite(a.kmax.unwrap_or(12), a.t)?,
            Suite::Rainbow => verify_rainbow_suite(a.trials, seed, a.n.unwrap_or(6), a.r)?,
            Suite::Lis => verify_lis_suite(a.trials, seed, a.n.unwrap_or(200))?,
            Suite::All => unreachable!(),
        };
        writeln!(
            out,
            "{}: verified {} instances, {} mismatches",
            outcome.suite,
            outcome.checked,
            outcome.mismatches.len()
        )?;
        for m in &outcome.mismatches {
            writeln!(out, "  {m}")?;
        }
        outcomes.push(outcome);
    }
    if let Some(path) = &a.out {
        output::write_file(path, &output::to_json(&outcomes)?)?;
    }
    Ok(if outcomes.iter().all(SuiteOutcome::passed) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

//! Seeded Monte Carlo experiments for `R_n`, `T_n` and `X_t`, and the
//! enumeration oracles used to cross-check the exact formulas.
//!
//! Trial `i` always draws from stream `i` of the experiment seed and results
//! are merged in trial order, so a report depends only on its configuration.

mod config;
mod oracle;
mod report;
mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::formulas;
use crate::dependent::{
    dependent_bounds, lis_length, lis_witness, segmented_count, snap_segment_size,
    top_segment_size, nearby_valid_t, BoundsReport, Regime, SnappedT,
};
use crate::error::{Error, Result};
use crate::graph::{sample_colouring_with, sample_injection_with, validate_planar};
use crate::rainbow::{alpha0, is_rainbow, lower_tail_bound, max_rainbow_exact, max_rainbow_greedy, upper_tail_bound};
use crate::rng::RNG_ALGORITHM;

pub use config::{ExperimentConfig, Mode, SegmentSize, Solver, DEFAULT_EPS};
pub use oracle::{
    brute_force_a1c, brute_force_event_probs, brute_force_rn, verify_a1c_suite, verify_joint_suite,
    verify_lis_suite, verify_rainbow_suite, SuiteOutcome, BRUTE_FORCE_MAX_N, ENUMERATION_LIMIT,
};
pub use report::{Check, CheckStatus, ExperimentReport, SweepReport, TailEntry, SCHEMA_VERSION};
pub use stats::{empirical_tail, frequency_standard_error, SampleSummary, Side};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PLANARMATCH_THREADS";

/// Width of every statistical acceptance band, in standard errors.
pub const SLACK_SE: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowTrial {
    pub trial: usize,
    pub r_n: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependentTrial {
    pub trial: usize,
    pub t_n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_t: Option<usize>,
}

/// Thread pool configuration. `workers: None` lets rayon pick.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Runner {
    pub workers: Option<usize>,
}

impl Runner {
    pub fn with_workers(workers: usize) -> Self {
        Runner {
            workers: Some(workers),
        }
    }

    /// Reads the worker cap from `PLANARMATCH_THREADS`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(w) if w >= 1 => Ok(Runner::with_workers(w)),
                _ => Err(Error::invalid(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
            },
            Err(_) => Ok(Runner::default()),
        }
    }

    /// Lowers the worker count to `cap` if it is larger (or unset).
    pub fn capped(self, cap: Option<usize>) -> Self {
        match (self.workers, cap) {
            (Some(w), Some(c)) => Runner::with_workers(w.min(c)),
            (None, Some(c)) => Runner::with_workers(c),
            (w, None) => Runner { workers: w },
        }
    }

    fn map_trials<T, F>(&self, trials: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.unwrap_or(0))
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| (0..trials).into_par_iter().map(&f).collect())
    }

    pub fn simulate_rainbow(&self, config: &ExperimentConfig) -> Result<Vec<RainbowTrial>> {
        expect_mode(config, Mode::Rainbow)?;
        config.validate()?;
        let (n, r) = (config.n, config.colours()?);
        let solver = config.solver;
        self.map_trials(config.trials, |trial| {
            let mut rng = config.seed.stream(trial as u64);
            let c = sample_colouring_with(n, r, &mut rng)?;
            let sol = match solver {
                Solver::Exact => max_rainbow_exact(&c)?,
                _ => max_rainbow_greedy(&c),
            };
            assert!(is_rainbow(&sol.witness, &c)?, "trial {trial}: witness is not a rainbow planar matching");
            assert_eq!(sol.size, sol.witness.len());
            Ok(RainbowTrial {
                trial,
                r_n: sol.size,
                exact: sol.exact,
            })
        })
    }

    pub fn simulate_dependent(&self, config: &ExperimentConfig) -> Result<(Option<SnappedT>, Vec<DependentTrial>)> {
        expect_mode(config, Mode::Dependent)?;
        config.validate()?;
        let n = config.n;
        let k = config.k.expect("validated");
        let segment = resolve_segment(config)?;
        let trials = self.map_trials(config.trials, |trial| {
            let mut rng = config.seed.stream(trial as u64);
            let inj = sample_injection_with(n, k, &mut rng)?;
            let t_n = lis_length(&inj);
            let witness = lis_witness(&inj);
            assert!(
                witness.len() == t_n && validate_planar(&witness, n, k),
                "trial {trial}: LIS witness does not certify T_n = {t_n}"
            );
            let x_t = match segment {
                Some(seg) => {
                    let x = segmented_count(&inj, seg.t)?.x_t;
                    assert!(x <= t_n, "trial {trial}: X_t = {x} exceeds T_n = {t_n}");
                    Some(x)
                }
                None => None,
            };
            Ok(DependentTrial { trial, t_n, x_t })
        })?;
        Ok((segment, trials))
    }

    pub fn run_rainbow(&self, config: &ExperimentConfig) -> Result<ExperimentReport> {
        let trials = self.simulate_rainbow(config)?;
        summarize_rainbow(config, &trials)
    }

    pub fn run_dependent(&self, config: &ExperimentConfig) -> Result<ExperimentReport> {
        let (segment, trials) = self.simulate_dependent(config)?;
        summarize_dependent(config, segment, &trials)
    }

    pub fn run(&self, config: &ExperimentConfig) -> Result<ExperimentReport> {
        match config.mode {
            Mode::Rainbow => self.run_rainbow(config),
            Mode::Dependent => self.run_dependent(config),
        }
    }
}

/// [`Runner::run_rainbow`] with the worker count taken from the environment.
pub fn run_rainbow(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Runner::from_env()?.run_rainbow(config)
}

/// [`Runner::run_dependent`] with the worker count taken from the environment.
pub fn run_dependent(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Runner::from_env()?.run_dependent(config)
}

fn expect_mode(config: &ExperimentConfig, mode: Mode) -> Result<()> {
    if config.mode != mode {
        return Err(Error::invalid(format!("expected a {mode:?} configuration, got {:?}", config.mode)));
    }
    Ok(())
}

/// Segment size a dependent run will use: an explicit `t` must give integral
/// `s = k t / n`; `sqrt` snaps `round(sqrt(n))` to the nearest valid `t`.
pub fn resolve_segment(config: &ExperimentConfig) -> Result<Option<SnappedT>> {
    let (n, k) = (config.n, config.k.unwrap_or(config.n));
    match config.t {
        None => Ok(None),
        Some(SegmentSize::Fixed(t)) => match top_segment_size(n, k, t) {
            Some(s) if (1..=n).contains(&t) => Ok(Some(SnappedT { requested: t, t, s })),
            Some(_) => Err(Error::invalid(format!("segment size t={t} outside 1..={n}"))),
            None => Err(Error::NonIntegralSegment {
                n,
                k,
                t,
                suggestions: nearby_valid_t(n, k, t),
            }),
        },
        Some(SegmentSize::Sqrt) => {
            let requested = (n as f64).sqrt().round() as usize;
            Ok(Some(snap_segment_size(n, k, requested)))
        }
    }
}

fn as_f64(values: impl Iterator<Item = usize>) -> Vec<f64> {
    values.map(|v| v as f64).collect()
}

fn tail_entry(statistic: &str, samples: &[f64], threshold: f64, side: Side) -> Result<TailEntry> {
    Ok(TailEntry {
        statistic: statistic.to_owned(),
        threshold,
        side,
        frequency: empirical_tail(samples, threshold, side)?,
    })
}

/// Empirical tail frequency against an analytic upper bound on it.
fn upper_bound_check(name: &str, equation: &str, bound: f64, freq: f64, trials: usize) -> Check {
    let tol = SLACK_SE * frequency_standard_error(freq, trials);
    let check = Check::new(name, equation, Some(bound), freq, tol);
    if freq <= bound + tol {
        check
    } else {
        check.status(CheckStatus::Fail)
    }
}

pub fn summarize_rainbow(config: &ExperimentConfig, trials: &[RainbowTrial]) -> Result<ExperimentReport> {
    let samples = as_f64(trials.iter().map(|t| t.r_n));
    let summary = SampleSummary::from_samples("R_n", &samples)?;
    let (n, r) = (config.n, config.colours()?);
    let alpha = config.density()?;
    let eps = config.eps;
    let exact = config.solver == Solver::Exact;
    let count = trials.len();

    let mut bounds = BoundsReport::default();
    bounds.push("alpha", "alpha = r / n", alpha, None, Regime::InRegime);
    bounds.push("alpha0", formulas::ALPHA0, alpha0(), None, Regime::InRegime);
    let upper = upper_tail_bound(n as u64, alpha, eps).ok();
    if let Some(b) = upper {
        let regime = if b.in_regime { Regime::InRegime } else { Regime::OutOfRegime };
        bounds.push("upper_tail", formulas::RAINBOW_UPPER_TAIL, b.value, Some(b.raw), regime);
    }
    let lower = lower_tail_bound(n as u64, alpha, eps).ok();
    if let Some(b) = lower {
        let regime = if b.raw >= 1.0 { Regime::Vacuous } else { Regime::InRegime };
        bounds.push("lower_tail", formulas::RAINBOW_LOWER_TAIL, b.value, Some(b.raw), regime);
    }

    let hi = (1.0 - eps) * r as f64;
    let lo = eps * r as f64;
    let tails = vec![
        tail_entry("R_n", &samples, hi, Side::Above)?,
        tail_entry("R_n", &samples, lo, Side::AtMost)?,
    ];

    let mut checks = Vec::new();
    let semantics = "greedy solver: statistic is a lower bound on R_n";

    let var_tol = SLACK_SE * summary.variance_standard_error;
    let var_check = Check::new(
        "variance",
        formulas::RAINBOW_VAR,
        Some(2.0 * summary.mean),
        summary.variance,
        var_tol,
    );
    checks.push(if !exact {
        var_check.status(CheckStatus::Flagged).note(semantics)
    } else if summary.variance <= 2.0 * summary.mean + var_tol {
        var_check
    } else {
        var_check.status(CheckStatus::Fail)
    });

    let freq_hi = tails[0].frequency;
    checks.push(match upper {
        Some(b) if exact => {
            let c = upper_bound_check("upper_tail", formulas::RAINBOW_UPPER_TAIL, b.value, freq_hi, count);
            if b.in_regime || c.status == CheckStatus::Pass {
                c
            } else {
                c.status(CheckStatus::Flagged).note("(1-eps) alpha < 1/2: outside the bound's regime")
            }
        }
        Some(b) => Check::new("upper_tail", formulas::RAINBOW_UPPER_TAIL, Some(b.value), freq_hi, 0.0)
            .status(CheckStatus::Flagged)
            .note(semantics),
        None => Check::new("upper_tail", formulas::RAINBOW_UPPER_TAIL, None, freq_hi, 0.0)
            .status(CheckStatus::Flagged)
            .note("needs 0 < eps < 1/2, alpha > 1/2 and (1-eps) alpha < 1"),
    });

    let freq_lo = tails[1].frequency;
    checks.push(match lower {
        Some(b) if exact => upper_bound_check("lower_tail", formulas::RAINBOW_LOWER_TAIL, b.value, freq_lo, count),
        Some(b) => Check::new("lower_tail", formulas::RAINBOW_LOWER_TAIL, Some(b.value), freq_lo, 0.0)
            .status(CheckStatus::Flagged)
            .note(semantics),
        None => Check::new("lower_tail", formulas::RAINBOW_LOWER_TAIL, None, freq_lo, 0.0)
            .status(CheckStatus::Flagged)
            .note("needs 0 < eps < 1/2"),
    });

    let fraction = summary.mean / r as f64;
    let frac_check = Check::new("fraction", formulas::RAINBOW_FRACTION, None, fraction, 0.0);
    checks.push(if fraction > 0.0 && fraction < 1.0 {
        frac_check
    } else if r == 1 {
        frac_check.status(CheckStatus::Flagged).note("r = 1 forces R_n = r")
    } else {
        frac_check.status(CheckStatus::Fail)
    });

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        rng_algorithm: RNG_ALGORITHM.to_owned(),
        segment: None,
        sample_mean: summary.mean,
        sample_variance: summary.variance,
        standard_error: summary.standard_error,
        statistics: vec![summary],
        empirical_tail: tails,
        bound_values: bounds,
        checks,
    })
}

/// Sample mean against `[lower, upper]`, each side widened by the slack.
fn mean_checks(
    prefix: &str,
    equation: &str,
    summary: &SampleSummary,
    lower: f64,
    upper: f64,
    in_regime: bool,
) -> [Check; 2] {
    let tol = SLACK_SE * summary.standard_error;
    let judge = |c: Check, ok: bool| {
        if ok {
            c
        } else if in_regime {
            c.status(CheckStatus::Fail)
        } else {
            c.status(CheckStatus::Flagged).note("outside the regime (s+t)/k <= 1/8")
        }
    };
    [
        judge(
            Check::new(&format!("{prefix}_lower"), equation, Some(lower), summary.mean, tol),
            summary.mean >= lower - tol,
        ),
        judge(
            Check::new(&format!("{prefix}_upper"), equation, Some(upper), summary.mean, tol),
            summary.mean <= upper + tol,
        ),
    ]
}

pub fn summarize_dependent(
    config: &ExperimentConfig,
    segment: Option<SnappedT>,
    trials: &[DependentTrial],
) -> Result<ExperimentReport> {
    let (n, k) = (config.n, config.k.unwrap_or(config.n));
    let t_samples = as_f64(trials.iter().map(|t| t.t_n));
    let t_summary = SampleSummary::from_samples("T_n", &t_samples)?;
    let bounds = dependent_bounds(n as u64, k as u64, segment.map(|s| s.t as u64), config.eps, config.b)?;

    let mut statistics = vec![t_summary.clone()];
    let mut tails = Vec::new();
    let mut checks = Vec::new();

    let mu_low = bounds.value("mu_low").expect("always present");
    let mu_up = bounds.value("mu_up").expect("always present");
    checks.extend(mean_checks("mean_tn", formulas::MEAN_TN, &t_summary, mu_low, mu_up, true));

    if let Some(seg) = segment {
        let x_samples: Vec<f64> = trials
            .iter()
            .map(|t| t.x_t.map(|x| x as f64).ok_or_else(|| Error::invalid("trial without X_t")))
            .collect::<Result<_>>()?;
        let x_summary = SampleSummary::from_samples("X_t", &x_samples)?;
        let lower = bounds.get("mean_xt_lower").expect("segment given");
        let upper = bounds.value("mean_xt_upper").expect("segment given");
        let in_regime = lower.regime == Regime::InRegime;
        checks.extend(mean_checks("mean_xt", formulas::MEAN_XT, &x_summary, lower.value, upper, in_regime));

        let shape = bounds.value("var_xt_shape").expect("segment given");
        checks.push(
            Check::new("var_xt", formulas::VAR_XT, Some(shape), x_summary.variance, 0.0)
                .status(CheckStatus::Flagged)
                .note(format!(
                    "D is unspecified; this sample needs D >= {:.6}",
                    x_summary.variance / shape
                )),
        );

        let violations = trials.iter().filter(|t| t.x_t.is_some_and(|x| x > t.t_n)).count();
        let hard = Check::new("xt_le_tn", formulas::SEGMENTED_LOWER, Some(0.0), violations as f64, 0.0)
            .note(format!("t={}, s={}, violations counted over all trials", seg.t, seg.s));
        checks.push(if violations == 0 { hard } else { hard.status(CheckStatus::Fail) });
        statistics.push(x_summary);
    }

    if config.b.is_some() {
        let tail = bounds.get("tail_probability").expect("b given").clone();
        let threshold = bounds.value("tail_threshold").expect("b given");
        let entry = tail_entry("T_n", &t_samples, threshold, Side::AtLeast)?;
        let count = trials.len() as f64;
        let p = tail.value;
        let tol = SLACK_SE * (p * (1.0 - p) / count).sqrt() + 2.0 / count;
        let check = Check::new("tail_general", formulas::TAIL_GENERAL, Some(p), entry.frequency, tol);
        checks.push(if entry.frequency >= p - tol {
            check
        } else if tail.regime == Regime::InRegime {
            check.status(CheckStatus::Fail)
        } else {
            check.status(CheckStatus::Flagged).note("b outside (2, n / (32^2 ln n)]")
        });
        tails.push(entry);
    }

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        rng_algorithm: RNG_ALGORITHM.to_owned(),
        segment,
        sample_mean: t_summary.mean,
        sample_variance: t_summary.variance,
        standard_error: t_summary.standard_error,
        statistics,
        empirical_tail: tails,
        bound_values: bounds,
        checks,
    })
}

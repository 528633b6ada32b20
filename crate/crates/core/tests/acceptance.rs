//! Acceptance criteria. Runs every criterion at its stated tolerance, prints
//! one PASS/FAIL line each, and exits non-zero if any failed.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use planarmatch::dependent::{
    chernoff_bound, f_bounds, joint_bound_a1a2, lis_length, mean_bounds_tn, mean_bounds_xt, prob_a1c_bounds,
    prob_a1c_exact, prob_joint_a1a2_exact, segmented_count, tail_bound_general, top_segment_size,
};
use planarmatch::montecarlo::{
    verify_a1c_suite, verify_joint_suite, verify_lis_suite, verify_rainbow_suite, ExperimentConfig, Runner,
    SegmentSize, Solver,
};
use planarmatch::rainbow::{rainbow_prob, rainbow_prob_upper};
use planarmatch::{sample_injection, Seed};

type Outcome = Result<String, String>;

const TOL: f64 = 1e-12;
const SLACK: f64 = 4.0;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn workers() -> Runner {
    Runner::from_env().expect("PLANARMATCH_THREADS")
}

/// Triples `(k, s, t)` with `k <= 400`, `s, t >= 1` and `8 (s + t) <= k`.
fn regime_grid() -> Vec<(u64, u64, u64)> {
    let mut grid = Vec::new();
    for k in 1..=400u64 {
        for s in 1..=k / 8 {
            for t in 1..=(k / 8).saturating_sub(s) {
                grid.push((k, s, t));
            }
        }
    }
    grid
}

fn c01_oracle_equality() -> Outcome {
    let a1c = verify_a1c_suite(9).map_err(|e| e.to_string())?;
    let joint = verify_joint_suite(12, 2).map_err(|e| e.to_string())?;
    let detail = format!(
        "a1c {} triples / {} mismatches, joint {} triples / {} mismatches",
        a1c.checked,
        a1c.mismatches.len(),
        joint.checked,
        joint.mismatches.len()
    );
    verdict(a1c.passed() && joint.passed(), detail)
}

fn c02_sandwich() -> Outcome {
    let grid = regime_grid();
    let violations: Vec<_> = grid
        .par_iter()
        .filter(|&&(k, s, t)| {
            let exact = prob_a1c_exact(k, s, t).unwrap();
            let b = prob_a1c_bounds(k, s, t).unwrap();
            !(b.in_regime && b.lower <= exact + TOL && exact <= b.upper + TOL)
        })
        .collect();
    let worked = prob_a1c_bounds(100, 10, 2).unwrap();
    let exact = prob_a1c_exact(100, 10, 2).unwrap();
    let worked_ok = (worked.lower - 0.650249).abs() < 1e-6
        && (worked.upper - 0.91870).abs() < 1e-5
        && (exact - 0.809091).abs() < 1e-6
        && worked.lower <= exact
        && exact <= worked.upper;
    verdict(
        violations.is_empty() && worked_ok,
        format!(
            "{} triples, {} violations; (100,10,2): {:.6} <= {:.6} <= {:.6}",
            grid.len(),
            violations.len(),
            worked.lower,
            exact,
            worked.upper
        ),
    )
}

fn c03_correlation() -> Outcome {
    let grid = regime_grid();
    let violations: Vec<_> = grid
        .par_iter()
        .filter(|&&(k, s, t)| {
            let joint = prob_joint_a1a2_exact(k, s, t).unwrap();
            let bound = joint_bound_a1a2(k, s, t).unwrap();
            !(bound.in_regime && joint <= bound.raw + TOL)
        })
        .collect();
    let joint = prob_joint_a1a2_exact(16, 1, 1).unwrap();
    let bound = joint_bound_a1a2(16, 1, 1).unwrap();
    let worked_ok = (joint - 0.879167).abs() < 1e-6 && (bound.raw - 1.2013).abs() < 1e-4;
    verdict(
        violations.is_empty() && worked_ok,
        format!(
            "{} triples, {} violations; (16,1,1): {:.6} <= {:.4}",
            grid.len(),
            violations.len(),
            joint,
            bound.raw
        ),
    )
}

fn c04_lis() -> Outcome {
    let out = verify_lis_suite(10_000, Seed(4), 200).map_err(|e| e.to_string())?;
    verdict(
        out.passed() && out.checked == 10_000,
        format!("{} instances, {} mismatches", out.checked, out.mismatches.len()),
    )
}

fn c05_segmented_lower_bound() -> Outcome {
    let trials = 100_000u64;
    let violations: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = Seed(5).stream(i);
            let n = rng.random_range(1..=120usize);
            let k = n * rng.random_range(1..=4usize);
            let valid: Vec<usize> = (1..=n).filter(|&t| top_segment_size(n, k, t).is_some()).collect();
            let t = valid[rng.random_range(0..valid.len())];
            let inj = planarmatch::graph::sample_injection_with(n, k, &mut rng).unwrap();
            let x = segmented_count(&inj, t).unwrap().x_t;
            u64::from(x > lis_length(&inj))
        })
        .sum();
    verdict(violations == 0, format!("{trials} trials, {violations} violations"))
}

fn c06_mean_xt() -> Outcome {
    let runner = workers();
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, k) in [(100, 100), (400, 400), (400, 800), (900, 900)] {
        let cfg = ExperimentConfig::dependent(n, k, 2000, 6).with_t(SegmentSize::Sqrt);
        let rep = runner.run(&cfg).map_err(|e| e.to_string())?;
        let t = rep.segment.unwrap().t;
        let x = rep.statistic("X_t").unwrap();
        let b = mean_bounds_xt(n as u64, k as u64, t as u64).unwrap();
        let lo = b.lower - SLACK * x.standard_error;
        let hi = b.upper + SLACK * x.standard_error;
        let inside = lo <= x.mean && x.mean <= hi;
        ok &= inside;
        parts.push(format!(
            "({n},{k},t={t}) mean {:.4} in [{lo:.4}, {hi:.4}]: {}",
            x.mean,
            if inside { "yes" } else { "no" }
        ));
    }
    verdict(ok, parts.join("; "))
}

fn c07_mean_tn() -> Outcome {
    let runner = workers();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [100, 400, 900] {
        let rep = runner
            .run(&ExperimentConfig::dependent(n, n, 1000, 7).with_eps(0.1))
            .map_err(|e| e.to_string())?;
        let b = mean_bounds_tn(n as u64, 0.1).unwrap();
        let inside = b.mu_low < rep.sample_mean && rep.sample_mean < b.mu_up;
        ok &= inside;
        parts.push(format!("n={n}: {:.3} < {:.3} < {:.3}", b.mu_low, rep.sample_mean, b.mu_up));
    }
    verdict(ok, parts.join("; "))
}

fn c08_tail() -> Outcome {
    let n = 100_000;
    let tb = tail_bound_general(n as u64, 4.0).map_err(|e| e.to_string())?;
    let rep = workers()
        .run(&ExperimentConfig::dependent(n, n, 200, 8).with_b(4.0))
        .map_err(|e| e.to_string())?;
    let hit = rep.empirical_tail[0].frequency;
    let misses = ((1.0 - hit) * 200.0).round() as usize;
    verdict(
        misses <= 2 && (tb.threshold - 46.60).abs() < 5e-3,
        format!(
            "threshold {:.3}, bound {:.6}, {misses}/200 trials below threshold, min T_n {}",
            tb.threshold,
            tb.probability,
            rep.statistic("T_n").unwrap().min
        ),
    )
}

fn c09_rainbow_equivalence() -> Outcome {
    let out = verify_rainbow_suite(500, Seed(9), 6, 6).map_err(|e| e.to_string())?;
    verdict(
        out.passed() && out.checked == 500,
        format!("{} instances, {} mismatches", out.checked, out.mismatches.len()),
    )
}

fn c10_rainbow_prob() -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for r in 1..=60u64 {
        for t in 1..=r {
            checked += 1;
            if rainbow_prob(t, r).unwrap() > rainbow_prob_upper(t, r).unwrap() {
                violations += 1;
            }
        }
    }
    verdict(violations == 0, format!("{checked} pairs, {violations} violations"))
}

fn c11_rainbow_variance() -> Outcome {
    let rep = workers()
        .run(&ExperimentConfig::rainbow(8, 8, 2000, 11, Solver::Exact))
        .map_err(|e| e.to_string())?;
    let s = rep.statistic("R_n").unwrap();
    let limit = 2.0 * s.mean + SLACK * s.variance_standard_error;
    verdict(
        s.variance <= limit,
        format!("var {:.4} <= 2 * {:.4} + 4 * {:.4} = {limit:.4}", s.variance, s.mean, s.variance_standard_error),
    )
}

fn c12_small_r() -> Outcome {
    let runner = workers();
    let cfg = ExperimentConfig::rainbow(2000, 20, 200, 12, Solver::Greedy);
    let trials = runner.simulate_rainbow(&cfg).map_err(|e| e.to_string())?;
    let good = trials.iter().filter(|t| t.r_n as f64 >= 0.9 * 20.0).count();
    verdict(good * 100 >= 95 * trials.len(), format!("{good}/{} trials with greedy size >= 18", trials.len()))
}

/// Exact `P(|S - theta| >= gamma theta)` for `S ~ Binomial(n, p)`, `p = num / den`.
fn binomial_two_sided_tail(n: u64, num: u64, den: u64, gamma: f64) -> f64 {
    let theta = n as f64 * num as f64 / den as f64;
    let mut coeff = BigInt::one();
    let mut tail = BigInt::zero();
    for j in 0..=n {
        if j > 0 {
            coeff = coeff * BigInt::from(n - j + 1) / BigInt::from(j);
        }
        if (j as f64 - theta).abs() >= gamma * theta - 1e-9 {
            tail += &coeff * BigInt::from(num).pow(j as u32) * BigInt::from(den - num).pow((n - j) as u32);
        }
    }
    BigRational::new(tail, BigInt::from(den).pow(n as u32)).to_f64().unwrap()
}

fn c13_chernoff() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for gamma in [0.1, 0.2, 0.3, 0.4, 0.5] {
        let exact = binomial_two_sided_tail(200, 3, 10, gamma);
        let bound = chernoff_bound(60.0, gamma).unwrap();
        ok &= exact <= bound;
        parts.push(format!("gamma {gamma}: {exact:.3e} <= {bound:.3e}"));
    }
    verdict(ok, parts.join("; "))
}

fn c14_elementary() -> Outcome {
    let exp_ineq = (1..=10_000)
        .map(|i| 0.5 * i as f64 / 10_000.0)
        .filter(|&x| (-x).exp() / (1.0 - x) > 1.0 + 4.0 * x * x)
        .count();
    // f(a, b, c) = prod_{i < c} (a - b - i) / (a - i), built up one factor at a time
    let (checked, f_violations) = (1..=500u64)
        .into_par_iter()
        .map(|a| {
            let (mut checked, mut bad) = (0u64, 0u64);
            for b in 0..a {
                let mut f = 1.0f64;
                for c in 1..a {
                    if 2 * (b + c) >= a {
                        break;
                    }
                    f *= (a - b - (c - 1)) as f64 / (a - (c - 1)) as f64;
                    let s = f_bounds(a, b, c).unwrap();
                    checked += 1;
                    if !(s.lower <= f * (1.0 + TOL) && f <= s.upper * (1.0 + TOL)) {
                        bad += 1;
                    }
                }
            }
            (checked, bad)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    verdict(
        exp_ineq == 0 && f_violations == 0,
        format!("e^-x / (1 - x) <= 1 + 4x^2 on 10000 points / {exp_ineq} violations, f bounds {checked} triples / {f_violations} violations"),
    )
}

fn c15_determinism() -> Outcome {
    let configs = [
        ExperimentConfig::dependent(400, 400, 1000, 15).with_t(SegmentSize::Sqrt).with_b(3.0),
        ExperimentConfig::rainbow(8, 8, 2000, 15, Solver::Exact),
        ExperimentConfig::rainbow(2000, 20, 50, 15, Solver::Greedy),
    ];
    let mut ok = true;
    for cfg in &configs {
        let reports: Vec<String> = [1, 4, 8]
            .iter()
            .map(|&w| serde_json::to_string(&Runner::with_workers(w).run(cfg).unwrap()).unwrap())
            .collect();
        ok &= reports.iter().all(|r| *r == reports[0]);
    }
    let inj_ok = [1usize, 4, 8].iter().all(|&w| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().unwrap();
        let draws: Vec<Vec<usize>> = pool.install(|| {
            (0..64u64).into_par_iter().map(|i| sample_injection(50, 90, Seed(i)).unwrap().values().to_vec()).collect()
        });
        draws == (0..64u64).map(|i| sample_injection(50, 90, Seed(i)).unwrap().values().to_vec()).collect::<Vec<_>>()
    });
    verdict(ok && inj_ok, format!("{} reports identical under 1, 4 and 8 workers", configs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 15] = [
        ("oracle equality of exact probabilities", c01_oracle_equality),
        ("block-avoidance sandwich bounds", c02_sandwich),
        ("block-avoidance correlation bound", c03_correlation),
        ("patience sorting against quadratic LIS", c04_lis),
        ("X_t <= T_n on fuzzed instances", c05_segmented_lower_bound),
        ("mean of X_t within its bounds", c06_mean_xt),
        ("mean of T_n within (mu_low, mu_up)", c07_mean_tn),
        ("lower tail of T_n at n = 1e5", c08_tail),
        ("exact rainbow solver against enumeration", c09_rainbow_equivalence),
        ("rainbow probability upper bound", c10_rainbow_prob),
        ("var(R_n) <= 2 E[R_n]", c11_rainbow_variance),
        ("greedy rainbow size for small r", c12_small_r),
        ("Chernoff bound against exact binomial tail", c13_chernoff),
        ("elementary inequalities", c14_elementary),
        ("determinism across worker counts", c15_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag} [{secs:.1}s] {name}: {detail}", i + 1);
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 15 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}

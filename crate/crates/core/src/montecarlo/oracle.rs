//! Exhaustive-enumeration oracles and the equivalence suites built on them.
//!
//! Nothing here shares code paths with the solvers and closed forms it
//! checks: rainbow matchings are enumerated by row/column subsets, event
//! probabilities by listing every injection.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::dependent::{lis_length, lis_length_oracle, prob_a1c_ratio, prob_joint_a1a2_ratio};
use crate::error::{Error, Result};
use crate::graph::{sample_colouring_with, sample_injection_with, ColourAssignment};
use crate::rainbow::{is_rainbow, max_rainbow_exact, max_rainbow_greedy};
use crate::rng::Seed;

pub const BRUTE_FORCE_MAX_N: usize = 6;
/// Largest number of injections an enumeration oracle will list.
pub const ENUMERATION_LIMIT: u64 = 20_000_000;

/// `R_n` by checking every pair of equal-size row and column subsets.
pub fn brute_force_rn(c: &ColourAssignment) -> Result<usize> {
    let n = c.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::ResourceGuard {
            what: "brute-force R_n: n",
            limit: BRUTE_FORCE_MAX_N as u64,
            requested: n as u64,
            hint: "use the exact solver",
        });
    }
    let subsets = 1u32 << n;
    let mut best = 0;
    for rows in 1..subsets {
        let size = rows.count_ones() as usize;
        if size <= best {
            continue;
        }
        for cols in 1..subsets {
            if cols.count_ones() as usize != size {
                continue;
            }
            // i-th chosen row pairs with the i-th chosen column
            let row_ids = (0..n).filter(|b| rows >> b & 1 == 1);
            let col_ids = (0..n).filter(|b| cols >> b & 1 == 1);
            let mut seen = std::collections::HashSet::new();
            if row_ids
                .zip(col_ids)
                .all(|(i, j)| seen.insert(c.colour(i + 1, j + 1)))
            {
                best = size;
                break;
            }
        }
    }
    Ok(best)
}

fn falling_count(k: u64, len: u64) -> u64 {
    (0..len).fold(1u64, |acc, i| acc.saturating_mul(k.saturating_sub(i)))
}

/// Visits every injection of `{1..len}` into `{1..k}` (`k <= 64`).
fn for_each_injection(k: u64, len: usize, visit: &mut impl FnMut(&[u64])) {
    fn go(k: u64, len: usize, used: u64, prefix: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
        if prefix.len() == len {
            visit(prefix);
            return;
        }
        for v in 1..=k {
            if used >> v & 1 == 0 {
                prefix.push(v);
                go(k, len, used | 1 << v, prefix, visit);
                prefix.pop();
            }
        }
    }
    go(k, len, 0, &mut Vec::with_capacity(len), visit);
}

fn guard_enumeration(k: u64, len: u64) -> Result<()> {
    let count = falling_count(k, len);
    if k > 63 || count > ENUMERATION_LIMIT {
        return Err(Error::ResourceGuard {
            what: "injection enumeration",
            limit: ENUMERATION_LIMIT,
            requested: count,
            hint: "reduce k or t",
        });
    }
    Ok(())
}

/// `P(no value of pi(1..t) lies in {1..s})` by listing all injections of `{1..t}`.
pub fn brute_force_a1c(k: u64, s: u64, t: u64) -> Result<BigRational> {
    if s == 0 || t == 0 || s > k || t > k {
        return Err(Error::invalid(format!("brute_force_a1c needs 1 <= s, t <= k (k={k}, s={s}, t={t})")));
    }
    guard_enumeration(k, t)?;
    let (mut hits, mut total) = (0u64, 0u64);
    for_each_injection(k, t as usize, &mut |pi| {
        total += 1;
        if pi.iter().all(|&v| v > s) {
            hits += 1;
        }
    });
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// `(P(A_1^c), P(A_1^c ∩ A_2^c))` from all injections of `{1..2t}` into `{1..k}`.
pub fn brute_force_event_probs(k: u64, s: u64, t: u64) -> Result<(BigRational, BigRational)> {
    if s == 0 || t == 0 || 2 * s > k || 2 * t > k {
        return Err(Error::invalid(format!(
            "brute_force_event_probs needs s, t >= 1, 2s <= k, 2t <= k (k={k}, s={s}, t={t})"
        )));
    }
    guard_enumeration(k, 2 * t)?;
    let t = t as usize;
    let (mut first, mut both, mut total) = (0u64, 0u64, 0u64);
    for_each_injection(k, 2 * t, &mut |pi| {
        total += 1;
        let avoid_first = pi[..t].iter().all(|&v| v > s);
        let avoid_second = pi[t..].iter().all(|&v| v <= s || v > 2 * s);
        first += avoid_first as u64;
        both += (avoid_first && avoid_second) as u64;
    });
    let q = |x: u64| BigRational::new(BigInt::from(x), BigInt::from(total));
    Ok((q(first), q(both)))
}

/// Count of instances checked by an equivalence suite and those that disagreed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: &str) -> Self {
        SuiteOutcome {
            suite: suite.to_owned(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Closed-form `P(A_1^c)` against enumeration for every `k <= kmax` and all `1 <= s, t <= k`.
pub fn verify_a1c_suite(kmax: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("a1c");
    for k in 1..=kmax {
        for s in 1..=k {
            for t in 1..=k {
                let closed = prob_a1c_ratio(k, s, t)?;
                let brute = brute_force_a1c(k, s, t)?;
                out.checked += 1;
                if closed != brute {
                    out.mismatches.push(format!("k={k} s={s} t={t}: {closed} vs {brute}"));
                }
            }
        }
    }
    Ok(out)
}

/// Split-set joint probability against enumeration for `k <= kmax`, `t <= tmax`.
pub fn verify_joint_suite(kmax: u64, tmax: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("joint");
    for k in 2..=kmax {
        for t in 1..=tmax.min(k / 2) {
            for s in 1..=k / 2 {
                let closed = prob_joint_a1a2_ratio(k, s, t)?;
                let (a1c, joint) = brute_force_event_probs(k, s, t)?;
                out.checked += 1;
                if closed != joint || prob_a1c_ratio(k, s, t)? != a1c {
                    out.mismatches.push(format!("k={k} s={s} t={t}: {closed} vs {joint}"));
                }
            }
        }
    }
    Ok(out)
}

/// Exact solver against subset enumeration (and greedy below exact) on
/// random colourings with `n <= nmax`, `r <= rmax`.
pub fn verify_rainbow_suite(instances: usize, seed: Seed, nmax: usize, rmax: u32) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("rainbow");
    for trial in 0..instances as u64 {
        let mut rng = seed.stream(trial);
        let n = 1 + (trial as usize) % nmax;
        let r = 1 + (trial as u32 / nmax as u32) % rmax;
        let c = sample_colouring_with(n, r, &mut rng)?;
        let exact = max_rainbow_exact(&c)?;
        let greedy = max_rainbow_greedy(&c);
        let brute = brute_force_rn(&c)?;
        out.checked += 1;
        if exact.size != brute
            || greedy.size > exact.size
            || !is_rainbow(&exact.witness, &c)?
            || !is_rainbow(&greedy.witness, &c)?
        {
            out.mismatches.push(format!(
                "trial {trial} (n={n}, r={r}): exact {} brute {brute} greedy {}",
                exact.size, greedy.size
            ));
        }
    }
    Ok(out)
}

/// Patience sorting against the quadratic DP on random injections with
/// `n <= nmax` and `k` cycling through `n`, `2n`, `n^2`.
pub fn verify_lis_suite(instances: usize, seed: Seed, nmax: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("lis");
    for trial in 0..instances as u64 {
        let mut rng = seed.stream(trial);
        let n = 1 + (trial as usize / 3) % nmax;
        let k = match trial % 3 {
            0 => n,
            1 => 2 * n,
            _ => n * n,
        };
        let inj = sample_injection_with(n, k, &mut rng)?;
        out.checked += 1;
        let (fast, slow) = (lis_length(&inj), lis_length_oracle(&inj));
        if fast != slow {
            out.mismatches.push(format!("trial {trial} (n={n}, k={k}): {fast} vs {slow}"));
        }
    }
    Ok(out)
}

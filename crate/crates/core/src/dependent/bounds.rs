//! Mean, variance and tail estimates for `X_t` and `T_n`, and the report
//! that collects them for one parameter point.

use serde::{Deserialize, Serialize};

use crate::bound::{clamp_probability, formulas, Sandwich};
use crate::error::{Error, Result};

use super::events::{joint_bound_a1a2, prob_a1c_bounds, prob_a1c_exact, prob_joint_a1a2_exact};
use super::segmented::top_segment_size;

/// `mu_t = (n/t) (1 - exp(-t^2/n))`.
pub fn mu_t(n: u64, t: u64) -> Result<f64> {
    if !(1..=n).contains(&t) {
        return Err(Error::invalid(format!("mu_t needs 1 <= t <= n (n={n}, t={t})")));
    }
    let (nf, tf) = (n as f64, t as f64);
    Ok(nf / tf * (-(-tf * tf / nf).exp_m1()))
}

/// `[mu_t - (17/t) e^{-t^2/n}, mu_t + (32 n / k^2) e^{-t^2/n}]` for `E X_t`.
///
/// `in_regime` is the hypothesis `(s+t)/k <= 1/8` of the block-avoidance
/// estimates the interval is derived from.
pub fn mean_bounds_xt(n: u64, k: u64, t: u64) -> Result<Sandwich> {
    if k < n {
        return Err(Error::invalid(format!("mean bounds need k >= n (n={n}, k={k})")));
    }
    let mu = mu_t(n, t)?;
    let s = top_segment_size(n as usize, k as usize, t as usize).ok_or_else(|| {
        Error::NonIntegralSegment {
            n: n as usize,
            k: k as usize,
            t: t as usize,
            suggestions: super::segmented::nearby_valid_t(n as usize, k as usize, t as usize),
        }
    })? as u64;
    let (nf, kf, tf) = (n as f64, k as f64, t as f64);
    let decay = (-tf * tf / nf).exp();
    Ok(Sandwich {
        lower: mu - 17.0 / tf * decay,
        upper: mu + 32.0 * nf / (kf * kf) * decay,
        in_regime: 8 * (s + t) <= k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanBoundsTn {
    pub mu_low: f64,
    pub mu_up: f64,
    /// `mu_low <= 0`: the lower bound says nothing at this `n`.
    pub low_vacuous: bool,
}

/// `mu_low = (1 - e^{-1}) sqrt(n) - 17/sqrt(n)` and `mu_up = (e + eps) sqrt(n) + 1`.
pub fn mean_bounds_tn(n: u64, eps: f64) -> Result<MeanBoundsTn> {
    if n == 0 || eps.is_nan() || eps < 0.0 {
        return Err(Error::invalid(format!("mean_bounds_tn needs n >= 1, eps >= 0 (n={n}, eps={eps})")));
    }
    let root = (n as f64).sqrt();
    let mu_low = (1.0 - (-1.0f64).exp()) * root - 17.0 / root;
    Ok(MeanBoundsTn {
        mu_low,
        mu_up: (std::f64::consts::E + eps) * root + 1.0,
        low_vacuous: mu_low <= 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    /// `sqrt(n / (b ln n))`
    pub threshold: f64,
    /// Lower bound on `P(T_n >= threshold)`: `1 - n^{-(b/2 - 1)}`.
    pub probability: f64,
}

/// Largest admissible `b`: `n / (32^2 ln n)`.
fn tail_b_cap(n: u64) -> f64 {
    n as f64 / (1024.0 * (n as f64).ln())
}

/// Lower tail estimate for `T_n`, valid for `2 < b <= n / (32^2 ln n)`.
pub fn tail_bound_general(n: u64, b: f64) -> Result<TailBound> {
    if n < 2 {
        return Err(Error::EmptyRange(format!("tail bound needs n >= 2 (n={n})")));
    }
    let cap = tail_b_cap(n);
    if cap <= 2.0 {
        return Err(Error::EmptyRange(format!(
            "no admissible b at n={n}: n / (32^2 ln n) = {cap:.4} <= 2"
        )));
    }
    if !(b > 2.0 && b <= cap) {
        return Err(Error::invalid(format!("b={b} outside (2, {cap:.4}] at n={n}")));
    }
    let ln_n = (n as f64).ln();
    Ok(TailBound {
        threshold: (n as f64 / (b * ln_n)).sqrt(),
        probability: -(-(b / 2.0 - 1.0) * ln_n).exp_m1(),
    })
}

/// `min(1, 2 exp(-gamma^2 theta / 4))`: two-sided relative deviation bound for
/// a sum of independent Bernoulli variables with mean `theta`.
pub fn chernoff_bound(theta: f64, gamma: f64) -> Result<f64> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::invalid(format!("chernoff bound needs theta > 0 (theta={theta})")));
    }
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::invalid(format!("gamma={gamma} outside (0, 1/2]")));
    }
    Ok(clamp_probability(2.0 * (-gamma * gamma * theta / 4.0).exp()))
}

/// `sqrt(n) + n^2 / k`, the shape of the variance bound for `X_t`.
pub fn var_structural(n: u64, k: u64) -> f64 {
    (n as f64).sqrt() + (n as f64).powi(2) / k as f64
}

/// `D (sqrt(n) + n^2 / k)` for a caller-chosen constant `D`.
pub fn var_bound_xt(n: u64, k: u64, d: f64) -> Result<f64> {
    if d.is_nan() || d <= 0.0 || k < n || n == 0 {
        return Err(Error::invalid(format!("var bound needs D > 0, k >= n >= 1 (n={n}, k={k}, D={d})")));
    }
    Ok(d * var_structural(n, k))
}

/// Whether an entry's hypotheses hold at the evaluated parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    InRegime,
    OutOfRegime,
    /// Evaluated, but carries no information (clamped to a trivial value).
    Vacuous,
    /// Contains an unspecified constant; only the shape is reported.
    Structural,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    /// Statement of the inequality this entry evaluates.
    pub equation: String,
    pub value: f64,
    /// Unclamped value, when finite and different from `value`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<f64>,
    pub regime: Regime,
}

/// Named analytic values at one parameter point.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn push(&mut self, name: &str, equation: &str, value: f64, raw: Option<f64>, regime: Regime) {
        let raw = raw.filter(|r| r.is_finite() && *r != value);
        self.entries.push(BoundEntry {
            name: name.to_owned(),
            equation: equation.to_owned(),
            value,
            raw,
            regime,
        });
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).map(|e| e.value)
    }
}

fn regime(ok: bool) -> Regime {
    if ok {
        Regime::InRegime
    } else {
        Regime::OutOfRegime
    }
}

/// Every analytic quantity of the dependent model at `(n, k)`, with segment
/// size `t` (when `k t / n` is integral) and tail parameter `b` (when admissible).
pub fn dependent_bounds(n: u64, k: u64, t: Option<u64>, eps: f64, b: Option<f64>) -> Result<BoundsReport> {
    let mut rep = BoundsReport::default();
    let tn = mean_bounds_tn(n, eps)?;
    let low_regime = if tn.low_vacuous { Regime::Vacuous } else { Regime::InRegime };
    rep.push("mu_low", formulas::MEAN_TN, tn.mu_low.max(0.0), Some(tn.mu_low), low_regime);
    rep.push("mu_up", formulas::MEAN_TN, tn.mu_up, None, Regime::InRegime);

    if let Some(t) = t {
        let s = top_segment_size(n as usize, k as usize, t as usize).ok_or_else(|| {
            Error::NonIntegralSegment {
                n: n as usize,
                k: k as usize,
                t: t as usize,
                suggestions: super::segmented::nearby_valid_t(n as usize, k as usize, t as usize),
            }
        })? as u64;
        let xt = mean_bounds_xt(n, k, t)?;
        rep.push("mu_t", formulas::MU_T, mu_t(n, t)?, None, Regime::InRegime);
        rep.push("mean_xt_lower", formulas::MEAN_XT, xt.lower, None, regime(xt.in_regime));
        rep.push("mean_xt_upper", formulas::MEAN_XT, xt.upper, None, regime(xt.in_regime));
        rep.push("p_a1c_exact", formulas::A1C_EXACT, prob_a1c_exact(k, s, t)?, None, Regime::InRegime);
        let pa = prob_a1c_bounds(k, s, t)?;
        rep.push("pa_one_lower", formulas::PA_ONE, pa.lower, None, regime(pa.in_regime));
        rep.push("pa_one_upper", formulas::PA_ONE, pa.upper, None, regime(pa.in_regime));
        if 2 * s <= k && 2 * t <= k {
            rep.push("p_joint_exact", formulas::JOINT_EXACT, prob_joint_a1a2_exact(k, s, t)?, None, Regime::InRegime);
            let jb = joint_bound_a1a2(k, s, t)?;
            rep.push("pa_two", formulas::PA_TWO, jb.value, Some(jb.raw), regime(jb.in_regime));
        }
        rep.push("var_xt_shape", formulas::VAR_XT, var_structural(n, k), None, Regime::Structural);
    }

    if let Some(b) = b {
        match tail_bound_general(n, b) {
            Ok(tb) => {
                rep.push("tail_threshold", formulas::TAIL_GENERAL, tb.threshold, None, Regime::InRegime);
                rep.push("tail_probability", formulas::TAIL_GENERAL, tb.probability, None, Regime::InRegime);
            }
            Err(Error::EmptyRange(_)) | Err(Error::InvalidParameter(_)) => {
                let ln_n = (n.max(2) as f64).ln();
                let threshold = (n as f64 / (b * ln_n)).sqrt();
                let p = clamp_probability(-(-(b / 2.0 - 1.0) * ln_n).exp_m1());
                rep.push("tail_threshold", formulas::TAIL_GENERAL, threshold, None, Regime::OutOfRegime);
                rep.push("tail_probability", formulas::TAIL_GENERAL, p, None, Regime::OutOfRegime);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

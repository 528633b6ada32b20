//! Annotated bound values.

use serde::{Deserialize, Serialize};

/// A bound evaluated at concrete parameters.
///
/// `raw` is the formula as written; `value` is `raw` clamped to `[0, 1]` for
/// probability-valued bounds (and equal to `raw` otherwise). `in_regime`
/// records whether the parameters satisfy the hypotheses under which the
/// bound is claimed to hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: f64,
    pub raw: f64,
    pub in_regime: bool,
}

impl Bound {
    pub fn probability(raw: f64, in_regime: bool) -> Self {
        Bound {
            value: clamp_probability(raw),
            raw,
            in_regime,
        }
    }

    pub fn scalar(raw: f64, in_regime: bool) -> Self {
        Bound {
            value: raw,
            raw,
            in_regime,
        }
    }
}

/// Lower and upper bound on the same quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sandwich {
    pub lower: f64,
    pub upper: f64,
    pub in_regime: bool,
}

pub fn clamp_probability(x: f64) -> f64 {
    if x.is_nan() {
        1.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

/// Plain-text statements of the inequalities that reports evaluate; every
/// bound entry and check carries one of these.
pub mod formulas {
    pub const MEAN_TN: &str = "(1-1/e) sqrt(n) - 17/sqrt(n) <= E[T_n] <= (e+eps) sqrt(n) + 1";
    pub const MU_T: &str = "mu_t = (n/t) (1 - exp(-t^2/n))";
    pub const MEAN_XT: &str = "mu_t - (17/t) exp(-t^2/n) <= E[X_t] <= mu_t + (32n/k^2) exp(-t^2/n)";
    pub const VAR_XT: &str = "var(X_t) <= D (sqrt(n) + n^2/k)";
    pub const A1C_EXACT: &str = "P(A1^c) = (k-s)_t / (k)_t";
    pub const PA_ONE: &str = "exp(-st/k - 8(s+t)^2 t/k^2) <= P(A1^c) <= exp(-st/k + 4(s+t)^2 t/k^2)";
    pub const JOINT_EXACT: &str = "P(A1^c & A2^c) = sum C(t,j1) C(t,j2) (s)_j1 (s)_j2 (k-2s)_(2t-j1-j2) / (k)_2t";
    pub const PA_TWO: &str = "P(A1^c & A2^c) <= P(A1^c) P(A2^c) exp(5t^2/k)";
    pub const TAIL_GENERAL: &str = "P(T_n >= sqrt(n/(b ln n))) >= 1 - n^-(b/2-1)";
    pub const SEGMENTED_LOWER: &str = "X_t <= T_n";
    pub const RAINBOW_VAR: &str = "var(R_n) <= 2 E[R_n]";
    pub const RAINBOW_UPPER_TAIL: &str =
        "P(R_n > (1-eps) r) <= sqrt(e) m n^2 exp(2n H((1-eps) alpha) - (1-eps)^2 alpha n/2)";
    pub const RAINBOW_LOWER_TAIL: &str = "P(R_n <= eps r) <= n (2^alpha eps)^n";
    pub const RAINBOW_FRACTION: &str = "beta1 r <= E[R_n] <= beta2 r with 0 < beta1 <= beta2 < 1";
    pub const ALPHA0: &str = "2 H(alpha0) = alpha0 / 2";
}

//! Exact integer and rational helpers for falling-factorial probabilities.
//!
//! Ratios of falling factorials lose precision quickly in floating point, so
//! every exact probability is assembled as a reduced [`BigRational`] and only
//! converted at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Falling factorial `(a)_b = a (a-1) ... (a-b+1)`, with `(a)_0 = 1`.
///
/// `a` may be negative or smaller than `b`; the product is taken literally.
pub fn falling(a: i64, b: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..b as i64 {
        let factor = a - i;
        if factor == 0 {
            return BigInt::zero();
        }
        acc *= factor;
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `num / den` as a reduced rational; `den` must be non-zero.
pub fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes outside the f64 range.
        if q.is_zero() {
            0.0
        } else if (q.numer() < &BigInt::zero()) != (q.denom() < &BigInt::zero()) {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

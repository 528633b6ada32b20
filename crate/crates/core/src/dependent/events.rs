//! Exact probabilities of the block-avoidance events and their bounds.
//!
//! With `S_1 = {1..s}` and `S_2 = {s+1..2s}`, `A_1^c` is the event that none of
//! `pi(1..t)` lands in `S_1`, and `A_2^c` that none of `pi(t+1..2t)` lands in
//! `S_2`. Exact values are reduced rationals built from falling factorials.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bound::{Bound, Sandwich};
use crate::error::{Error, Result};
use crate::exact::{binomial, falling, ratio, to_f64};

/// `P(A_1^c) = (k-s)_t / (k)_t`, zero once `t > k - s`.
pub fn prob_a1c_ratio(k: u64, s: u64, t: u64) -> Result<BigRational> {
    if !(1..=k).contains(&s) || !(1..=k).contains(&t) {
        return Err(Error::invalid(format!(
            "P(A1^c) needs 1 <= s <= k and 1 <= t <= k (k={k}, s={s}, t={t})"
        )));
    }
    Ok(ratio(falling((k - s) as i64, t), falling(k as i64, t)))
}

pub fn prob_a1c_exact(k: u64, s: u64, t: u64) -> Result<f64> {
    prob_a1c_ratio(k, s, t).map(|q| to_f64(&q))
}

/// `exp(-st/k - 8(s+t)^2 t/k^2) <= P(A_1^c) <= exp(-st/k + 4(s+t)^2 t/k^2)`,
/// claimed for `(s+t)/k <= 1/8`. Out-of-regime inputs are still evaluated.
pub fn prob_a1c_bounds(k: u64, s: u64, t: u64) -> Result<Sandwich> {
    if k == 0 || s == 0 || t == 0 {
        return Err(Error::invalid("P(A1^c) bounds need k, s, t >= 1"));
    }
    let (kf, sf, tf) = (k as f64, s as f64, t as f64);
    let main = -sf * tf / kf;
    let corr = (sf + tf).powi(2) * tf / (kf * kf);
    Ok(Sandwich {
        lower: (main - 8.0 * corr).exp().clamp(0.0, 1.0),
        upper: (main + 4.0 * corr).exp().clamp(0.0, 1.0),
        in_regime: 8 * (s + t) <= k,
    })
}

/// Exact `P(A_1^c ∩ A_2^c)` by the split-set decomposition.
///
/// Splitting on `Q_1` (indices of `1..t` mapped into `S_2`) and `Q_2`
/// (indices of `t+1..2t` mapped into `S_1`), with everything else avoiding
/// `S_1 ∪ S_2`:
///
/// `sum_{j1, j2} C(t,j1) C(t,j2) (s)_{j1} (s)_{j2} (k-2s)_{2t-j1-j2} / (k)_{2t}`.
pub fn prob_joint_a1a2_ratio(k: u64, s: u64, t: u64) -> Result<BigRational> {
    if s == 0 || t == 0 || 2 * s > k || 2 * t > k {
        return Err(Error::invalid(format!(
            "P(A1^c ∩ A2^c) needs s, t >= 1, 2s <= k, 2t <= k (k={k}, s={s}, t={t})"
        )));
    }
    let weights: Vec<BigInt> = (0..=t).map(|j| binomial(t, j) * falling(s as i64, j)).collect();
    // conv[m] = sum over j1 + j2 = m of weights[j1] * weights[j2]
    let mut conv = vec![BigInt::from(0); (2 * t + 1) as usize];
    for (j1, a) in weights.iter().enumerate() {
        for (j2, b) in weights.iter().enumerate() {
            conv[j1 + j2] += a * b;
        }
    }
    // Horner form of sum_m conv[m] * (k-2s)_{2t-m}.
    let rest = (k - 2 * s) as i64;
    let span = 2 * t as i64;
    let mut acc = conv[0].clone();
    for (m, c) in conv.iter().enumerate().skip(1) {
        acc = c + acc * (rest - (span - m as i64));
    }
    Ok(ratio(acc, falling(k as i64, 2 * t)))
}

pub fn prob_joint_a1a2_exact(k: u64, s: u64, t: u64) -> Result<f64> {
    prob_joint_a1a2_ratio(k, s, t).map(|q| to_f64(&q))
}

/// `P(A_1^c) P(A_2^c) exp(5 t^2 / k)`; `P(A_2^c) = P(A_1^c)` by symmetry.
pub fn joint_bound_a1a2(k: u64, s: u64, t: u64) -> Result<Bound> {
    let p = prob_a1c_exact(k, s, t)?;
    let raw = p * p * (5.0 * (t * t) as f64 / k as f64).exp();
    Ok(Bound::probability(raw, 8 * (s + t) <= k))
}

/// `f(a, b, c) = (a-b)_c / (a)_c`.
pub fn falling_ratio_exact(a: u64, b: u64, c: u64) -> Result<BigRational> {
    if a == 0 {
        return Err(Error::invalid("falling_ratio needs a >= 1"));
    }
    if c > a {
        return Err(Error::invalid(format!("falling_ratio needs c <= a (a={a}, c={c})")));
    }
    Ok(ratio(falling(a as i64 - b as i64, c), falling(a as i64, c)))
}

pub fn falling_ratio(a: u64, b: u64, c: u64) -> Result<f64> {
    falling_ratio_exact(a, b, c).map(|q| to_f64(&q))
}

/// `exp(-2bc/a - c^2/a) <= f(a,b,c) <= exp(-bc/a + c^2/a)`, claimed for
/// `c >= 1` and `(b+c)/a < 1/2`.
pub fn f_bounds(a: u64, b: u64, c: u64) -> Result<Sandwich> {
    if a == 0 {
        return Err(Error::invalid("f bounds need a >= 1"));
    }
    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    Ok(Sandwich {
        lower: (-2.0 * bf * cf / af - cf * cf / af).exp(),
        upper: (-bf * cf / af + cf * cf / af).exp(),
        in_regime: c >= 1 && 2 * (b + c) < a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn a1c_examples() {
        assert_eq!(prob_a1c_ratio(4, 2, 2).unwrap(), q(1, 6));
        assert!(prob_a1c_ratio(9, 9, 3).unwrap().is_zero());
        assert!(prob_a1c_ratio(9, 5, 5).unwrap().is_zero());
        assert_eq!(prob_a1c_ratio(100, 10, 2).unwrap(), q(90 * 89, 100 * 99));
        assert!((prob_a1c_exact(100, 10, 2).unwrap() - 0.809091).abs() < 1e-6);
        assert!(prob_a1c_ratio(4, 0, 1).is_err());
        assert!(prob_a1c_ratio(4, 1, 5).is_err());
    }

    #[test]
    fn a1c_sandwich_examples() {
        let b = prob_a1c_bounds(100, 10, 2).unwrap();
        assert!(b.in_regime);
        assert!((b.lower - 0.650249).abs() < 1e-6);
        assert!((b.upper - 0.91870).abs() < 1e-5);
        let b = prob_a1c_bounds(16, 1, 1).unwrap();
        assert!(b.in_regime);
        assert!((b.lower - 0.829029).abs() < 1e-6);
        assert!((b.upper - 1.0).abs() < 1e-12);
        assert!(b.lower <= 0.9375 && 0.9375 <= b.upper);
    }

    #[test]
    fn joint_examples() {
        assert_eq!(prob_joint_a1a2_ratio(16, 1, 1).unwrap(), q(211, 240));
        // no free values outside S_1 ∪ S_2: the blocks must swap targets
        assert_eq!(prob_joint_a1a2_ratio(4, 2, 2).unwrap(), q(4, 24));
        assert!(prob_joint_a1a2_ratio(5, 3, 1).is_err());
        let b = joint_bound_a1a2(16, 1, 1).unwrap();
        assert!((b.raw - 1.2013).abs() < 1e-4);
        assert_eq!(b.value, 1.0);
        assert!(b.in_regime);
    }

    #[test]
    fn joint_bound_approaches_square() {
        let k = 1_000_000;
        let p = prob_a1c_exact(k, 10, 1).unwrap();
        let b = joint_bound_a1a2(k, 10, 1).unwrap();
        assert!(b.raw >= p * p);
        assert!((b.raw - p * p).abs() < 1e-5);
    }

    #[test]
    fn falling_ratio_examples() {
        for (a, b) in [(1, 0), (5, 3), (9, 12)] {
            assert_eq!(falling_ratio(a, b, 0).unwrap(), 1.0);
        }
        assert_eq!(falling_ratio_exact(4, 2, 2).unwrap(), q(1, 6));
        assert!(falling_ratio(3, 1, 4).is_err());
    }
}

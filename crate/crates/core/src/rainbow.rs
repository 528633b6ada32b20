//! Rainbow planar matchings of a uniformly coloured `K_{n,n}`.
//!
//! [`max_rainbow_exact`] computes `R_n` by a memoized branch and bound over
//! (next bottom row, next top column, used colours); [`max_rainbow_greedy`]
//! gives a cheap lower bound for instances beyond the exact solver's reach.
//! The remaining functions evaluate the probability bounds behind the upper
//! and lower deviation estimates for `R_n`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::exact::{falling, ratio, to_f64};
use crate::graph::{validate_planar, ColourAssignment, PlanarMatching};

/// Colours are tracked in a `u64` bit set by the exact solver.
pub const MAX_EXACT_COLOURS: u32 = 64;

/// Size limits for [`max_rainbow_exact_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLimits {
    pub max_n: usize,
    pub max_r: u32,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_n: 14, max_r: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowSolution {
    pub size: usize,
    pub witness: PlanarMatching,
    /// `true` when `size` is the maximum, `false` for a heuristic lower bound.
    pub exact: bool,
}

/// Planar with pairwise distinct edge colours.
pub fn is_rainbow(m: &PlanarMatching, c: &ColourAssignment) -> Result<bool> {
    let n = c.n();
    if let Some(&(i, j)) = m
        .edges
        .iter()
        .find(|&&(i, j)| !(1..=n).contains(&i) || !(1..=n).contains(&j))
    {
        return Err(Error::invalid(format!("edge ({i}, {j}) outside K_{{{n},{n}}}")));
    }
    if !validate_planar(m, n, n) {
        return Ok(false);
    }
    let mut used = vec![false; c.r() as usize + 1];
    Ok(m.edges
        .iter()
        .all(|&(i, j)| !std::mem::replace(&mut used[c.colour(i, j) as usize], true)))
}

/// `R_n` with the default [`ExactLimits`].
pub fn max_rainbow_exact(c: &ColourAssignment) -> Result<RainbowSolution> {
    max_rainbow_exact_with(c, ExactLimits::default())
}

pub fn max_rainbow_exact_with(c: &ColourAssignment, limits: ExactLimits) -> Result<RainbowSolution> {
    if c.n() > limits.max_n {
        return Err(Error::ResourceGuard {
            what: "exact rainbow solver: n",
            limit: limits.max_n as u64,
            requested: c.n() as u64,
            hint: "use the greedy solver for a lower bound",
        });
    }
    let max_r = limits.max_r.min(MAX_EXACT_COLOURS);
    if c.r() > max_r {
        return Err(Error::ResourceGuard {
            what: "exact rainbow solver: r",
            limit: max_r as u64,
            requested: c.r() as u64,
            hint: "use the greedy solver for a lower bound",
        });
    }
    let mut solver = ExactSolver::new(c);
    let edges = solver.witness();
    Ok(RainbowSolution {
        size: edges.len(),
        witness: PlanarMatching::new(edges),
        exact: true,
    })
}

struct ExactSolver<'a> {
    c: &'a ColourAssignment,
    n: usize,
    r: usize,
    memo: HashMap<(u32, u64), u8>,
}

impl<'a> ExactSolver<'a> {
    fn new(c: &'a ColourAssignment) -> Self {
        ExactSolver {
            c,
            n: c.n(),
            r: c.r() as usize,
            memo: HashMap::new(),
        }
    }

    /// Rows `i..n` and columns `j..n` remain (0-based), colours in `mask` are spent.
    #[inline]
    fn upper(&self, i: usize, j: usize, mask: u64) -> usize {
        (self.n - i)
            .min(self.n - j)
            .min(self.r - mask.count_ones() as usize)
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> u64 {
        1u64 << (self.c.row(i + 1)[j] - 1)
    }

    fn solve(&mut self, i: usize, j: usize, mask: u64) -> usize {
        let cap = self.upper(i, j, mask);
        if cap == 0 {
            return 0;
        }
        let key = ((i * (self.n + 1) + j) as u32, mask);
        if let Some(&v) = self.memo.get(&key) {
            return v as usize;
        }
        let mut best = 0;
        // Within a row only the first column of each unused colour matters:
        // a later column with the same colour leaves strictly fewer columns.
        let mut seen = mask;
        for jj in j..self.n {
            let bit = self.bit(i, jj);
            if seen & bit != 0 {
                continue;
            }
            seen |= bit;
            let child = mask | bit;
            // The child bound only shrinks as jj grows.
            if self.upper(i + 1, jj + 1, child) < best {
                break;
            }
            best = best.max(1 + self.solve(i + 1, jj + 1, child));
            if best == cap {
                break;
            }
        }
        if best < cap && self.upper(i + 1, j, mask) > best {
            best = best.max(self.solve(i + 1, j, mask));
        }
        self.memo.insert(key, best as u8);
        best
    }

    fn witness(&mut self) -> Vec<(usize, usize)> {
        let (mut i, mut j, mut mask) = (0, 0, 0u64);
        let mut target = self.solve(0, 0, 0);
        let mut edges = Vec::with_capacity(target);
        while target > 0 {
            let mut taken = None;
            let mut seen = mask;
            for jj in j..self.n {
                let bit = self.bit(i, jj);
                if seen & bit != 0 {
                    continue;
                }
                seen |= bit;
                if 1 + self.solve(i + 1, jj + 1, mask | bit) == target {
                    taken = Some((jj, bit));
                    break;
                }
            }
            match taken {
                Some((jj, bit)) => {
                    edges.push((i + 1, jj + 1));
                    mask |= bit;
                    j = jj + 1;
                    target -= 1;
                }
                None => debug_assert_eq!(self.solve(i + 1, j, mask), target),
            }
            i += 1;
        }
        edges
    }
}

/// Left-to-right sweep: each bottom row takes the smallest top index beyond
/// the previous edge whose colour is still unused.
pub fn max_rainbow_greedy(c: &ColourAssignment) -> RainbowSolution {
    let n = c.n();
    let r = c.r() as usize;
    let mut used = vec![false; r + 1];
    let mut edges = Vec::new();
    let mut next_col = 0;
    for i in 1..=n {
        if next_col == n || edges.len() == r {
            break;
        }
        let row = c.row(i);
        if let Some(jj) = (next_col..n).find(|&jj| !used[row[jj] as usize]) {
            used[row[jj] as usize] = true;
            edges.push((i, jj + 1));
            next_col = jj + 1;
        }
    }
    RainbowSolution {
        size: edges.len(),
        witness: PlanarMatching::new(edges),
        exact: false,
    }
}

/// Probability that `t` fixed edges carry distinct colours:
/// `prod_{i=1}^{t-1} (r - i) / r`, evaluated exactly.
pub fn rainbow_prob(t: u64, r: u64) -> Result<f64> {
    if t == 0 || r == 0 {
        return Err(Error::invalid("rainbow_prob needs t, r >= 1"));
    }
    if t > r {
        return Ok(0.0);
    }
    // (r)_t / r^t
    let den = num_bigint::BigInt::from(r).pow(t as u32);
    Ok(to_f64(&ratio(falling(r as i64, t), den)))
}

/// `sqrt(e) exp(-t^2 / (2r))`, valid for `t <= r`.
pub fn rainbow_prob_upper(t: u64, r: u64) -> Result<f64> {
    if t == 0 || t > r {
        return Err(Error::invalid(format!("rainbow_prob_upper needs 1 <= t <= r (t={t}, r={r})")));
    }
    let (t, r) = (t as f64, r as f64);
    Ok((0.5 - t * t / (2.0 * r)).exp())
}

/// Binary entropy in nats, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("binary entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    Ok(term(x) + term(1.0 - x))
}

fn entropy_gap(x: f64) -> f64 {
    2.0 * binary_entropy(x).expect("x in [0, 1]") - x / 2.0
}

/// Root of `2 H(x) = x / 2` in `(1/2, 1)`: the colour density above which the
/// union bound on large rainbow matchings decays.
pub fn alpha0() -> f64 {
    let (mut lo, mut hi) = (0.5_f64, 1.0_f64);
    debug_assert!(entropy_gap(lo) > 0.0 && entropy_gap(hi) < 0.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if entropy_gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::invalid(format!("eps={eps} outside (0, 1/2)")));
    }
    Ok(())
}

/// Union bound on `P(some rainbow planar matching has more than (1-eps) r edges)`,
/// with `r = alpha n`:
///
/// `sqrt(e) * m * n^2 * exp(2 n H((1-eps) alpha) - (1-eps)^2 alpha n / 2)`,
///
/// where `m` counts the integers `t` in `((1-eps) alpha n, min(n, alpha n)]`.
/// The binomial-coefficient comparison used to reach this form is only
/// literal when `(1-eps) alpha >= 1/2`; `in_regime` reports that.
pub fn upper_tail_bound(n: u64, alpha: f64, eps: f64) -> Result<Bound> {
    check_eps(eps)?;
    if n == 0 {
        return Err(Error::invalid("upper_tail_bound needs n >= 1"));
    }
    if alpha <= 0.5 {
        return Err(Error::invalid(format!("upper_tail_bound needs alpha > 1/2 (alpha={alpha})")));
    }
    let x = (1.0 - eps) * alpha;
    if x >= 1.0 {
        return Err(Error::invalid(format!("upper_tail_bound needs (1-eps) alpha < 1 (got {x})")));
    }
    let nf = n as f64;
    let m = upper_tail_term_count(n, alpha, eps) as f64;
    let raw = if m == 0.0 {
        0.0
    } else {
        let exponent = 2.0 * nf * binary_entropy(x)? - (1.0 - eps).powi(2) * alpha * nf / 2.0;
        (0.5 + m.ln() + 2.0 * nf.ln() + exponent).exp()
    };
    Ok(Bound::probability(raw, x >= 0.5))
}

/// Number of integers `t` with `(1-eps) alpha n < t <= min(n, alpha n)`: the
/// matching sizes summed over in [`upper_tail_bound`].
pub fn upper_tail_term_count(n: u64, alpha: f64, eps: f64) -> u64 {
    let nf = n as f64;
    let top = nf.min(alpha * nf).floor();
    let bottom = ((1.0 - eps) * alpha * nf).floor();
    (top - bottom).max(0.0) as u64
}

/// Bound on `P(R_n <= eps r)` through the colours of the `n` vertical edges:
/// `n (2^alpha eps)^n`.
pub fn lower_tail_bound(n: u64, alpha: f64, eps: f64) -> Result<Bound> {
    check_eps(eps)?;
    if alpha <= 0.0 {
        return Err(Error::invalid(format!("lower_tail_bound needs alpha > 0 (alpha={alpha})")));
    }
    if n == 0 {
        return Err(Error::invalid("lower_tail_bound needs n >= 1"));
    }
    let nf = n as f64;
    let raw = (nf.ln() + nf * (alpha * std::f64::consts::LN_2 + eps.ln())).exp();
    Ok(Bound::probability(raw, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample_colouring;
    use crate::rng::Seed;

    fn rows(r: u32, rows: &[&[u32]]) -> ColourAssignment {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        ColourAssignment::from_rows(r, &rows).unwrap()
    }

    #[test]
    fn rainbow_checks() {
        let c = rows(2, &[&[1, 2], &[2, 2]]);
        assert!(is_rainbow(&PlanarMatching::new(vec![(1, 2)]), &c).unwrap());
        assert!(!is_rainbow(&PlanarMatching::new(vec![(1, 2), (2, 2)]), &c).unwrap());
        let d = rows(2, &[&[1, 1], &[1, 2]]);
        assert!(is_rainbow(&PlanarMatching::new(vec![(1, 1), (2, 2)]), &d).unwrap());
        // same colour on two planar edges
        let e = rows(2, &[&[1, 2], &[2, 1]]);
        assert!(!is_rainbow(&PlanarMatching::new(vec![(1, 1), (2, 2)]), &e).unwrap());
        assert!(is_rainbow(&PlanarMatching::new(vec![(3, 1)]), &e).is_err());
    }

    #[test]
    fn exact_small_cases() {
        let one = rows(1, &[&[1, 1], &[1, 1]]);
        assert_eq!(max_rainbow_exact(&one).unwrap().size, 1);
        let anti = rows(2, &[&[1, 2], &[2, 1]]);
        assert_eq!(max_rainbow_exact(&anti).unwrap().size, 1);
        let diag = rows(2, &[&[1, 1], &[1, 2]]);
        let sol = max_rainbow_exact(&diag).unwrap();
        assert_eq!(sol.size, 2);
        assert!(sol.exact);
        assert_eq!(sol.witness.edges, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn exact_respects_guard() {
        let c = sample_colouring(15, 4, Seed(1)).unwrap();
        assert!(matches!(max_rainbow_exact(&c), Err(Error::ResourceGuard { .. })));
        let c = sample_colouring(5, 21, Seed(1)).unwrap();
        assert!(matches!(max_rainbow_exact(&c), Err(Error::ResourceGuard { .. })));
        let wide = ExactLimits { max_n: 20, max_r: 100 };
        let c = sample_colouring(5, 65, Seed(1)).unwrap();
        assert!(max_rainbow_exact_with(&c, wide).is_err());
        let c = sample_colouring(5, 64, Seed(1)).unwrap();
        assert!(max_rainbow_exact_with(&c, wide).is_ok());
    }

    #[test]
    fn greedy_single_colour() {
        for n in 1..6 {
            let c = sample_colouring(n, 1, Seed(n as u64)).unwrap();
            assert_eq!(max_rainbow_greedy(&c).size, 1);
        }
    }

    #[test]
    fn greedy_never_beats_exact() {
        for trial in 0..200u64 {
            let n = 1 + (trial % 10) as usize;
            let r = 1 + ((trial / 10) % 10) as u32;
            let c = sample_colouring(n, r, Seed(trial)).unwrap();
            let g = max_rainbow_greedy(&c);
            let e = max_rainbow_exact(&c).unwrap();
            assert!(is_rainbow(&g.witness, &c).unwrap());
            assert!(is_rainbow(&e.witness, &c).unwrap());
            assert!(g.size <= e.size);
            assert!(e.size <= n.min(r as usize));
        }
    }

    #[test]
    fn rainbow_prob_values() {
        assert_eq!(rainbow_prob(1, 7).unwrap(), 1.0);
        assert!((rainbow_prob(3, 4).unwrap() - 0.375).abs() < 1e-15);
        assert_eq!(rainbow_prob(5, 4).unwrap(), 0.0);
    }

    #[test]
    fn rainbow_prob_upper_values() {
        let u = rainbow_prob_upper(2, 2).unwrap();
        assert!((u - (-0.5f64).exp()).abs() < 1e-15);
        assert!(rainbow_prob(2, 2).unwrap() <= u);
        for r in 1..20 {
            assert!(rainbow_prob_upper(1, r).unwrap() >= 1.0);
        }
        assert!(rainbow_prob_upper(3, 2).is_err());
    }

    #[test]
    fn entropy_values() {
        assert!((binary_entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.25).unwrap() - 0.562335).abs() < 1e-6);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn alpha0_root() {
        assert!(entropy_gap(0.9) > 0.0);
        assert!(entropy_gap(0.99) < 0.0);
        let a = alpha0();
        assert!(a > 0.9 && a < 0.99);
        assert!(entropy_gap(a).abs() < 1e-10);
    }

    #[test]
    fn upper_tail_examples() {
        let b = upper_tail_bound(100, 1.0, 0.1).unwrap();
        assert_eq!(b.value, 1.0);
        assert!(b.raw > 1.0);
        assert!(upper_tail_bound(100, 1.0, 0.02).unwrap().value < 1e-7);
        assert!(upper_tail_bound(100, 0.4, 0.1).is_err());
        assert!(upper_tail_bound(100, 1.2, 0.1).is_err());
        assert!(upper_tail_bound(100, 1.0, 0.5).is_err());
    }

    #[test]
    fn upper_tail_monotone_in_n() {
        // The per-size term decays at every step; the term count m steps up
        // by one now and then, so the full bound decays over longer strides.
        let per_term = |n| upper_tail_bound(n, 1.0, 0.02).unwrap().value / upper_tail_term_count(n, 1.0, 0.02) as f64;
        for n in 100..1000 {
            assert!(per_term(n + 1) <= per_term(n), "n={n}");
        }
        let mut prev = f64::INFINITY;
        for n in (100..=1000).step_by(5) {
            let v = upper_tail_bound(n, 1.0, 0.02).unwrap().value;
            assert!(v <= prev, "n={n}");
            prev = v;
        }
    }

    #[test]
    fn lower_tail_examples() {
        let b = lower_tail_bound(10, 1.0, 0.1).unwrap();
        assert!((b.value - 1.024e-6).abs() < 1e-15);
        // eps = 2^-alpha makes the base 1
        assert_eq!(lower_tail_bound(10, 2.0, 0.25).unwrap().value, 1.0);
        let mut prev = lower_tail_bound(2, 1.0, 0.1).unwrap().value;
        for n in 3..200 {
            let v = lower_tail_bound(n, 1.0, 0.1).unwrap().value;
            assert!(v < prev, "n={n}");
            prev = v;
        }
        assert!(lower_tail_bound(10, 0.0, 0.1).is_err());
    }
}

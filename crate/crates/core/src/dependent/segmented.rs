use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{segment, Injection};

/// Per-block hits of a `t`-segmentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegStats {
    pub t: usize,
    pub s: usize,
    /// Number of aligned block pairs, `I = J = floor(n/t)`.
    pub blocks: usize,
    /// `X_t`: number of blocks `i` where some `z` in bottom block `i` maps
    /// into top block `i`.
    pub x_t: usize,
    pub indicators: Vec<bool>,
}

/// `s = k t / n` when it is an integer.
pub fn top_segment_size(n: usize, k: usize, t: usize) -> Option<usize> {
    let num = k.checked_mul(t)?;
    (num % n == 0).then_some(num / n)
}

/// Up to four `t` closest to `t` (ties to the smaller) with integral `k t / n`.
pub fn nearby_valid_t(n: usize, k: usize, t: usize) -> Vec<usize> {
    let mut found = Vec::new();
    for d in 0..=n {
        for cand in [t.checked_sub(d), t.checked_add(d)].into_iter().flatten() {
            if (1..=n).contains(&cand)
                && !found.contains(&cand)
                && top_segment_size(n, k, cand).is_some()
            {
                found.push(cand);
            }
        }
        if found.len() >= 4 {
            break;
        }
    }
    found.truncate(4);
    found
}

/// Result of resolving a requested segment size to one with integral `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnappedT {
    pub requested: usize,
    pub t: usize,
    pub s: usize,
}

impl SnappedT {
    pub fn snapped(&self) -> bool {
        self.requested != self.t
    }
}

/// Nearest `t` to `requested` (clamped to `1..=n`) for which `k t / n` is an
/// integer; `t = n` always qualifies.
pub fn snap_segment_size(n: usize, k: usize, requested: usize) -> SnappedT {
    let target = requested.clamp(1, n.max(1));
    let t = nearby_valid_t(n, k, target)
        .first()
        .copied()
        .unwrap_or(n);
    SnappedT {
        requested,
        t,
        s: top_segment_size(n, k, t).unwrap_or(k),
    }
}

/// `X_t` and its block indicators for an injection. Requires `s = k t / n`
/// to be an integer so that bottom and top blocks align one to one.
pub fn segmented_count(inj: &Injection, t: usize) -> Result<SegStats> {
    let (n, k) = (inj.n(), inj.k());
    if !(1..=n).contains(&t) {
        return Err(Error::invalid(format!("segment size t={t} outside 1..={n}")));
    }
    let s = top_segment_size(n, k, t).ok_or_else(|| Error::NonIntegralSegment {
        n,
        k,
        t,
        suggestions: nearby_valid_t(n, k, t),
    })?;
    let seg = segment(n, t, k, s)?;
    let blocks = seg.blocks_bottom.len();
    debug_assert_eq!(blocks, seg.blocks_top.len());
    let values = inj.values();
    let indicators: Vec<bool> = seg
        .blocks_bottom
        .iter()
        .zip(&seg.blocks_top)
        .map(|(bottom, top)| (bottom.start..=bottom.end).any(|z| top.contains(values[z - 1])))
        .collect();
    Ok(SegStats {
        t,
        s,
        blocks,
        x_t: indicators.iter().filter(|&&hit| hit).count(),
        indicators,
    })
}

//! Domain types shared by both random models, their uniform samplers, and
//! the segmentation geometry used by the segmented lower bound.
//!
//! All external indices are 1-based: bottom vertex `u_i` has index `i`, top
//! vertex `v_j` has index `j`, colours are labels in `1..=r`.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;

/// A colour label for every edge `(i, j)` of `K_{n,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourAssignment {
    n: usize,
    r: u32,
    /// Row-major, `colours[(i-1)*n + (j-1)]`.
    colours: Vec<u32>,
}

impl ColourAssignment {
    /// Builds an assignment from explicit rows; `rows[i-1][j-1]` is the colour
    /// of edge `(i, j)`.
    pub fn from_rows(r: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || r == 0 {
            return Err(Error::invalid("colour assignment needs n >= 1 and r >= 1"));
        }
        let mut colours = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&c| c == 0 || c > r) {
                return Err(Error::invalid(format!("colour {bad} outside 1..={r}")));
            }
            colours.extend_from_slice(row);
        }
        Ok(ColourAssignment { n, r, colours })
    }

    /// Builds an assignment by evaluating `f(i, j)` on every 1-based edge.
    pub fn from_fn(n: usize, r: u32, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        let rows: Vec<Vec<u32>> = (1..=n).map(|i| (1..=n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(r, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Colour of edge `(i, j)`; panics on out-of-range indices.
    #[inline]
    pub fn colour(&self, i: usize, j: usize) -> u32 {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "edge ({i}, {j}) outside K_{{{0},{0}}}",
            self.n
        );
        self.colours[(i - 1) * self.n + (j - 1)]
    }

    /// Row `i` (1-based) as a slice indexed by `j - 1`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.colours[(i - 1) * self.n..i * self.n]
    }
}

/// An injection `pi: {1..n} -> {1..k}`, i.e. a 1-regular subgraph of `K_{k,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Injection {
    k: usize,
    pi: Vec<usize>,
}

impl Injection {
    pub fn new(k: usize, pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        if n == 0 {
            return Err(Error::invalid("injection needs n >= 1"));
        }
        if k < n {
            return Err(Error::invalid(format!("injection needs k >= n (k={k}, n={n})")));
        }
        let mut seen = vec![false; k + 1];
        for &v in &pi {
            if v == 0 || v > k {
                return Err(Error::invalid(format!("value {v} outside 1..={k}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("value {v} repeated")));
            }
        }
        Ok(Injection { k, pi })
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `pi[0]` is the top index adjacent to bottom vertex 1.
    pub fn values(&self) -> &[usize] {
        &self.pi
    }
}

/// A set of edges `(bottom, top)`; planar when both coordinates strictly
/// increase along the list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarMatching {
    pub edges: Vec<(usize, usize)>,
}

impl PlanarMatching {
    pub fn new(edges: Vec<(usize, usize)>) -> Self {
        PlanarMatching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sorts edges by bottom index; validation after this is order-insensitive.
    pub fn canonicalize(&mut self) {
        self.edges.sort_unstable();
    }
}

/// True iff both coordinate sequences are strictly increasing and every edge
/// lies in `1..=bottom` x `1..=top`.
pub fn validate_planar(m: &PlanarMatching, bottom: usize, top: usize) -> bool {
    let in_range = m
        .edges
        .iter()
        .all(|&(i, j)| (1..=bottom).contains(&i) && (1..=top).contains(&j));
    in_range
        && m
            .edges
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
}

/// Uniform colouring of `K_{n,n}` with `r` colours from stream 0 of `seed`.
pub fn sample_colouring(n: usize, r: u32, seed: Seed) -> Result<ColourAssignment> {
    sample_colouring_with(n, r, &mut seed.rng())
}

/// Uniform colouring drawn from an explicit generator, row by row.
pub fn sample_colouring_with<R: Rng + ?Sized>(
    n: usize,
    r: u32,
    rng: &mut R,
) -> Result<ColourAssignment> {
    if n == 0 || r == 0 {
        return Err(Error::invalid(format!("sample_colouring needs n, r >= 1 (n={n}, r={r})")));
    }
    let colours = (0..n * n).map(|_| rng.random_range(1..=r)).collect();
    Ok(ColourAssignment { n, r, colours })
}

/// Uniform injection of `{1..n}` into `{1..k}` from stream 0 of `seed`.
pub fn sample_injection(n: usize, k: usize, seed: Seed) -> Result<Injection> {
    sample_injection_with(n, k, &mut seed.rng())
}

/// Partial Fisher-Yates over `{1..k}`: position `i` swaps with a uniform
/// position in `i..k` and the first `n` slots are the injection. Large `k`
/// uses a sparse swap table; both layouts consume the generator identically,
/// so the output depends only on the stream.
pub fn sample_injection_with<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Injection> {
    if n == 0 || n > k {
        return Err(Error::invalid(format!("sample_injection needs 1 <= n <= k (n={n}, k={k})")));
    }
    let pi = if k <= 4 * n + 64 {
        partial_shuffle_dense(n, k, rng)
    } else {
        partial_shuffle_sparse(n, k, rng)
    };
    Ok(Injection { k, pi })
}

fn partial_shuffle_dense<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut slots: Vec<usize> = (1..=k).collect();
    for i in 0..n {
        let j = rng.random_range(i..k);
        slots.swap(i, j);
    }
    slots.truncate(n);
    slots
}

fn partial_shuffle_sparse<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    // Only displaced slots are stored; an absent key `p` holds value `p + 1`.
    let mut moved: HashMap<usize, usize> = HashMap::with_capacity(2 * n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let j = rng.random_range(i..k);
        let at_j = moved.get(&j).copied().unwrap_or(j + 1);
        let at_i = moved.get(&i).copied().unwrap_or(i + 1);
        moved.insert(j, at_i);
        out.push(at_j);
    }
    out
}

/// Inclusive 1-based index interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.start <= x && x <= self.end
    }
}

/// Bottom indices split into `I = floor(n/t)` blocks of size `t` and top
/// indices into `J = floor(k/s)` blocks of size `s`, with any remainder
/// folded into the last block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub s: usize,
    pub blocks_bottom: Vec<Block>,
    pub blocks_top: Vec<Block>,
}

fn blocks(len: usize, size: usize) -> Vec<Block> {
    let count = len / size;
    (1..=count)
        .map(|b| Block {
            start: (b - 1) * size + 1,
            end: if b == count { len } else { b * size },
        })
        .collect()
}

/// Segments `{1..n}` with block size `t` and `{1..k}` with block size `s`.
///
/// Requires `1 <= t <= n`, `1 <= s <= k` and `s <= t k / n`, which keeps the
/// number of bottom blocks at most the number of top blocks.
pub fn segment(n: usize, t: usize, k: usize, s: usize) -> Result<Segmentation> {
    if !(1..=n).contains(&t) {
        return Err(Error::invalid(format!("segment size t={t} outside 1..={n}")));
    }
    if !(1..=k).contains(&s) {
        return Err(Error::invalid(format!("segment size s={s} outside 1..={k}")));
    }
    if (s as u128) * (n as u128) > (t as u128) * (k as u128) {
        return Err(Error::invalid(format!("need s <= t k / n (s={s}, t={t}, k={k}, n={n})")));
    }
    Ok(Segmentation {
        n,
        t,
        k,
        s,
        blocks_bottom: blocks(n, t),
        blocks_top: blocks(k, s),
    })
}

use crate::graph::{Injection, PlanarMatching};

/// `T_n`: length of the longest strictly increasing subsequence of the
/// injection's values, which is also its largest planar matching.
pub fn lis_length(inj: &Injection) -> usize {
    lis_length_of(inj.values())
}

/// Patience sorting: `tops[p]` is the smallest value that ends an increasing
/// subsequence of length `p + 1`. `O(n log n)`.
pub fn lis_length_of(values: &[usize]) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &v in values {
        let pile = tops.partition_point(|&top| top < v);
        if pile == tops.len() {
            tops.push(v);
        } else {
            tops[pile] = v;
        }
    }
    tops.len()
}

/// A maximum planar matching `(i, pi(i))` of the injection's graph.
pub fn lis_witness(inj: &Injection) -> PlanarMatching {
    let values = inj.values();
    // tops holds positions; prev links each position to its predecessor.
    let mut tops: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; values.len()];
    for (pos, &v) in values.iter().enumerate() {
        let pile = tops.partition_point(|&p| values[p] < v);
        prev[pos] = pile.checked_sub(1).map(|q| tops[q]);
        if pile == tops.len() {
            tops.push(pos);
        } else {
            tops[pile] = pos;
        }
    }
    let mut edges = Vec::with_capacity(tops.len());
    let mut cur = tops.last().copied();
    while let Some(pos) = cur {
        edges.push((pos + 1, values[pos]));
        cur = prev[pos];
    }
    edges.reverse();
    PlanarMatching::new(edges)
}

/// Quadratic dynamic program over "longest increasing run ending here".
/// Reference for [`lis_length`].
pub fn lis_length_oracle(inj: &Injection) -> usize {
    let v = inj.values();
    let mut ending = vec![1usize; v.len()];
    for i in 0..v.len() {
        for j in 0..i {
            if v[j] < v[i] {
                ending[i] = ending[i].max(ending[j] + 1);
            }
        }
    }
    ending.into_iter().max().unwrap_or(0)
}

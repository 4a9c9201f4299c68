//! Smallest transversal hypergraphs and lower bounds on their size.

use std::ops::ControlFlow;

use itertools::Itertools;
use serde::Serialize;

use super::{for_each_partition, Hypergraph};
use crate::error::{Error, Result};
use crate::index_set::{binomial, IndexSet};

/// Exact search is attempted only with at most this many candidate edges,
/// so at most `2^14` edge subsets are examined.
pub const EXACT_EDGE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinTransversal {
    pub mode: SearchMode,
    /// The minimum for `Exact`, an upper bound for `Greedy`.
    pub size: usize,
    pub example: Hypergraph,
    /// Edge subsets tested (exact) or edges chosen (greedy).
    pub work: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// `⌈C(n, k−1) / k⌉`: every `(k−1)`-subset must extend to an edge, and
    /// each edge has `k` such subsets.
    pub incidence: usize,
    /// `⌈2 C(n, k) / (n − k + 2)⌉`.
    pub sterboul: usize,
}

fn div_ceil(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Lower bounds on the number of edges of a transversal `k`-uniform
/// hypergraph on `[n]`.
///
/// The second bound is `2/(n−k+2) · C(n,k)`. Reading the same bound with
/// `k − 1` in place of `k` (that is, `2/(n−k+3) · C(n,k−1)`) gives 11 at
/// `(n, k) = (7, 6)`, which exceeds the achievable 6, so that reading is
/// not used.
pub fn bounds(n: usize, k: usize) -> Result<Bounds> {
    if k == 0 || k > n {
        return Err(Error::InvalidHypergraph(format!("edge size {k} on {n} vertices")));
    }
    let incidence = div_ceil(binomial(n, k - 1), k);
    // a single block: any one edge will do
    let sterboul = if k == 1 { 1 } else { div_ceil(2 * binomial(n, k), n - k + 2) };
    Ok(Bounds { incidence, sterboul })
}

/// For every `k`-block partition, the set of candidate edges meeting each
/// block once, as bitmasks over `candidates`.
fn partition_masks(n: usize, k: usize, candidates: &[IndexSet]) -> Vec<Vec<u64>> {
    let words = candidates.len().div_ceil(64).max(1);
    let zero_based: Vec<Vec<usize>> = candidates.iter().map(|e| e.zero_based()).collect();
    let mut out = Vec::new();
    let mut seen = vec![0usize; k];
    let mut stamp = 0;
    for_each_partition(n, k, |labels| {
        let mut mask = vec![0u64; words];
        for (idx, e) in zero_based.iter().enumerate() {
            stamp += 1;
            if e.iter().all(|&i| std::mem::replace(&mut seen[labels[i]], stamp) != stamp) {
                mask[idx / 64] |= 1 << (idx % 64);
            }
        }
        out.push(mask);
        ControlFlow::Continue(())
    });
    out
}

/// Minimum transversal `k`-uniform hypergraph on `[n]`.
///
/// `Exact` tries edge subsets in order of size, lexicographically within a
/// size, and returns the first transversal one; it refuses with a budget
/// error when there are more than [`EXACT_EDGE_LIMIT`] candidate edges.
/// `Greedy` repeatedly adds the edge meeting the most partitions not yet
/// covered and gives an upper bound.
pub fn min_transversal(n: usize, k: usize, mode: SearchMode) -> Result<MinTransversal> {
    bounds(n, k)?;
    match mode {
        SearchMode::Greedy => greedy_transversal(n, k),
        SearchMode::Exact => {
            let candidates: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
            if candidates.len() > EXACT_EDGE_LIMIT {
                return Err(Error::BudgetExceeded(format!(
                    "exact search over C({n},{k}) = {} candidate edges exceeds the limit of {EXACT_EDGE_LIMIT}; use greedy mode",
                    candidates.len()
                )));
            }
            let masks: Vec<u64> = partition_masks(n, k, &candidates).into_iter().map(|m| m[0]).collect();
            let mut work = 0;
            for size in 0..=candidates.len() {
                for chosen in (0..candidates.len()).combinations(size) {
                    work += 1;
                    let bits = chosen.iter().fold(0u64, |acc, &i| acc | 1 << i);
                    if masks.iter().all(|m| m & bits != 0) {
                        let example = Hypergraph::new(n, k, chosen.iter().map(|&i| candidates[i].clone()).collect())?;
                        debug_assert!(example.is_transversal());
                        return Ok(MinTransversal {
                            mode,
                            size,
                            example,
                            work,
                        });
                    }
                }
            }
            Err(Error::Internal("the complete hypergraph is always transversal".into()))
        }
    }
}

/// Greedy upper bound on the minimum size of a transversal hypergraph.
pub fn greedy_transversal(n: usize, k: usize) -> Result<MinTransversal> {
    bounds(n, k)?;
    let candidates: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
    let masks = partition_masks(n, k, &candidates);
    let mut uncovered: Vec<usize> = (0..masks.len()).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let has = |m: &[u64], e: usize| m[e / 64] >> (e % 64) & 1 == 1;
    while !uncovered.is_empty() {
        let best = (0..candidates.len())
            .filter(|e| !chosen.contains(e))
            .max_by_key(|&e| (uncovered.iter().filter(|&&p| has(&masks[p], e)).count(), std::cmp::Reverse(e)))
            .ok_or_else(|| Error::Internal("ran out of candidate edges".into()))?;
        chosen.push(best);
        uncovered.retain(|&p| !has(&masks[p], best));
    }
    let example = Hypergraph::new(n, k, chosen.iter().map(|&i| candidates[i].clone()).collect())?;
    Ok(MinTransversal {
        mode: SearchMode::Greedy,
        size: chosen.len(),
        work: chosen.len(),
        example,
    })
}

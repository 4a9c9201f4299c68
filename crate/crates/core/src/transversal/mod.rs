//! Transversality of uniform hypergraphs.
//!
//! A `k`-uniform hypergraph on `[n]` is transversal when every partition of
//! `[n]` into `k` nonempty blocks has an edge meeting each block exactly
//! once. Such edge sets are exactly the sets of maximal minors (or of
//! six-point conic conditions, for `k = 6`) that still cut out the same
//! locus set-theoretically.

mod partitions;
mod search;
mod witness;

pub use partitions::{for_each_partition, partition_count, BlockPartition};
pub use search::{bounds, greedy_transversal, min_transversal, Bounds, MinTransversal, SearchMode, EXACT_EDGE_LIMIT};
pub use witness::{v2n_witness, ydn_witness};

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// A set of `k`-subsets of `[n]`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<IndexSet>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<IndexSet>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidHypergraph(format!("edge size {k} on {n} vertices")));
        }
        for e in &edges {
            if e.len() != k || e.ground() != n {
                return Err(Error::InvalidHypergraph(format!("edge {e} is not a {k}-subset of [{n}]")));
            }
        }
        let mut edges = edges;
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(format!("edge {} repeated", w[0])));
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// From edges written as 1-based member lists in any order.
    pub fn from_lists(n: usize, k: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| {
                let mut m = l.clone();
                m.sort_unstable();
                IndexSet::new(n, m).map_err(|e| Error::InvalidHypergraph(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(n, k, edges)
    }

    /// All of `C([n], k)`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        Hypergraph::new(n, k, IndexSet::subsets(n, k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[IndexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &IndexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Whether `e` meets every block of the partition exactly once.
    pub fn meets_each_block(e: &IndexSet, p: &BlockPartition) -> bool {
        let labels = p.labels();
        let mut seen = vec![false; p.block_count()];
        e.len() == p.block_count() && e.members().iter().all(|&i| !std::mem::replace(&mut seen[labels[i - 1]], true))
    }

    /// The lexicographically first partition (by restricted growth string)
    /// that no edge meets block-by-block, if any.
    pub fn failing_partition(&self) -> Option<BlockPartition> {
        let edges: Vec<Vec<usize>> = self.edges.iter().map(|e| e.zero_based()).collect();
        let mut seen = vec![0usize; self.k];
        let mut stamp = 0usize;
        let mut found = None;
        for_each_partition(self.n, self.k, |labels| {
            let hit = edges.iter().any(|e| {
                stamp += 1;
                e.iter().all(|&i| std::mem::replace(&mut seen[labels[i]], stamp) != stamp)
            });
            if hit {
                ControlFlow::Continue(())
            } else {
                found = Some(BlockPartition::from_labels(labels).expect("enumerated partitions are valid"));
                ControlFlow::Break(())
            }
        });
        found
    }

    pub fn is_transversal(&self) -> bool {
        self.failing_partition().is_none()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pentagon() -> Hypergraph {
        Hypergraph::from_lists(5, 3, &[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]]).unwrap()
    }

    /// Brute force over ordered partitions, i.e. surjections `[n] → [k]`.
    fn ordered_oracle(h: &Hypergraph) -> bool {
        let (n, k) = (h.n(), h.k());
        let total = k.pow(n as u32);
        (0..total).all(|mut code| {
            let labels: Vec<usize> = (0..n)
                .map(|_| {
                    let l = code % k;
                    code /= k;
                    l
                })
                .collect();
            let mut used = vec![false; k];
            labels.iter().for_each(|&l| used[l] = true);
            if used.contains(&false) {
                return true;
            }
            h.edges().iter().any(|e| {
                let mut hit: Vec<usize> = e.members().iter().map(|&i| labels[i - 1]).collect();
                hit.sort_unstable();
                hit == (0..k).collect::<Vec<_>>()
            })
        })
    }

    #[test]
    fn pentagon_is_transversal() {
        assert!(pentagon().is_transversal());
        assert_eq!(pentagon().failing_partition(), None);
    }

    #[test]
    fn pentagon_minus_an_edge_fails() {
        let h = Hypergraph::from_lists(5, 3, &[vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]]).unwrap();
        let p = h.failing_partition().expect("not transversal");
        assert!(h.edges().iter().all(|e| !Hypergraph::meets_each_block(e, &p)));
    }

    #[test]
    fn graphs_are_transversal_iff_connected() {
        let single = Hypergraph::from_lists(3, 2, &[vec![1, 2]]).unwrap();
        assert!(!single.is_transversal());
        let path = Hypergraph::from_lists(4, 2, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert!(path.is_transversal());
        let two = Hypergraph::from_lists(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(!two.is_transversal());
    }

    #[test]
    fn complete_and_empty() {
        for (n, k) in [(5, 3), (6, 6), (7, 4), (4, 1)] {
            assert!(Hypergraph::complete(n, k).unwrap().is_transversal());
            let empty = Hypergraph::new(n, k, vec![]).unwrap();
            let first = empty.failing_partition().unwrap();
            // the lexicographically first restricted growth string
            let mut expect: Vec<usize> = vec![0; n - k + 1];
            expect.extend(1..k);
            assert_eq!(first.labels(), expect);
        }
    }

    #[test]
    fn malformed_hypergraphs() {
        assert!(Hypergraph::from_lists(5, 3, &[vec![1, 2]]).is_err());
        assert!(Hypergraph::from_lists(5, 3, &[vec![1, 2, 6]]).is_err());
        assert!(Hypergraph::from_lists(5, 3, &[vec![1, 2, 3], vec![3, 2, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_ordered_oracle(n in 2usize..=7, k in 1usize..=7, mask in any::<u64>()) {
            prop_assume!(k <= n);
            let all: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
            let edges = all.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
            let h = Hypergraph::new(n, k, edges).unwrap();
            prop_assert_eq!(h.is_transversal(), ordered_oracle(&h));
        }

        #[test]
        fn adding_edges_preserves_transversality(n in 3usize..=7, k in 2usize..=5, mask in any::<u64>(), extra in any::<u64>()) {
            prop_assume!(k <= n);
            let all: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
            let pick = |m: u64| all.iter().enumerate().filter(|(i, _)| m >> (i % 64) & 1 == 1).map(|(_, e)| e.clone()).collect::<Vec<_>>();
            let small = Hypergraph::new(n, k, pick(mask)).unwrap();
            let big = Hypergraph::new(n, k, pick(mask | extra)).unwrap();
            prop_assert!(!small.is_transversal() || big.is_transversal());
        }
    }
}

//! Set partitions of `[n]` into exactly `k` blocks, as restricted growth
//! strings: `a₀ = 0` and `aᵢ ≤ 1 + max(a₀ … a_{i−1})`, with `k − 1` reached.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// A partition of `[n]` into nonempty blocks, ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockPartition {
    n: usize,
    blocks: Vec<IndexSet>,
}

impl BlockPartition {
    /// Validates blocks of `[n]`; their order is normalized.
    pub fn new(n: usize, blocks: Vec<IndexSet>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() || b.ground() != n {
                return Err(Error::InvalidHypergraph(format!("block {b} is empty or not in [{n}]")));
            }
            for &i in b.members() {
                if std::mem::replace(&mut seen[i - 1], true) {
                    return Err(Error::InvalidHypergraph(format!("{i} lies in two blocks")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidHypergraph(format!("{} lies in no block", i + 1)));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.members()[0]);
        Ok(BlockPartition { n, blocks })
    }

    /// From a block label (0-based) for each element of `[n]`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let blocks = (0..k)
            .map(|b| IndexSet::new(n, (1..=n).filter(|&i| labels[i - 1] == b).collect()))
            .collect::<Result<Vec<_>>>()?;
        BlockPartition::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element; this is the restricted growth string.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block.members() {
                labels[i - 1] = b;
            }
        }
        labels
    }
}

/// Calls `visit` on the label vector of every partition of `[n]` into
/// exactly `k` blocks, in lexicographic order, until it breaks.
pub fn for_each_partition(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
    if k == 0 || k > n {
        return;
    }
    let mut labels = vec![0; n];
    let _ = extend(&mut labels, 1, 1, k, &mut visit);
}

/// `pos` is the next position to fill, `used` the number of blocks opened.
fn extend(
    labels: &mut [usize],
    pos: usize,
    used: usize,
    k: usize,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = labels.len();
    if pos == n {
        return if used == k { visit(labels) } else { ControlFlow::Continue(()) };
    }
    // not enough positions left to open the remaining blocks
    if k - used > n - pos {
        return ControlFlow::Continue(());
    }
    for l in 0..=used.min(k - 1) {
        labels[pos] = l;
        extend(labels, pos + 1, used.max(l + 1), k, visit)?;
    }
    ControlFlow::Continue(())
}

/// Stirling number of the second kind, by enumeration.
pub fn partition_count(n: usize, k: usize) -> usize {
    let mut count = 0;
    for_each_partition(n, k, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stirling(n: usize, k: usize) -> usize {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) | (0, _) => 0,
            _ => k * stirling(n - 1, k) + stirling(n - 1, k - 1),
        }
    }

    #[test]
    fn counts_match_the_recurrence() {
        for n in 1..=8 {
            for k in 1..=n {
                assert_eq!(partition_count(n, k), stirling(n, k), "S({n},{k})");
            }
        }
        assert_eq!(partition_count(3, 4), 0);
    }

    #[test]
    fn enumeration_is_lexicographic_and_restricted() {
        let mut all: Vec<Vec<usize>> = Vec::new();
        for_each_partition(6, 3, |l| {
            all.push(l.to_vec());
            ControlFlow::Continue(())
        });
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for l in &all {
            let mut max = 0;
            assert_eq!(l[0], 0);
            for &x in &l[1..] {
                assert!(x <= max + 1);
                max = max.max(x);
            }
            assert_eq!(max, 2);
            assert_eq!(BlockPartition::from_labels(l).unwrap().labels(), *l);
        }
    }

    #[test]
    fn invalid_partitions() {
        let s = |m: &[usize]| IndexSet::new(4, m.to_vec()).unwrap();
        assert!(BlockPartition::new(4, vec![s(&[1, 2]), s(&[2, 3, 4])]).is_err());
        assert!(BlockPartition::new(4, vec![s(&[1, 2]), s(&[3])]).is_err());
        assert!(BlockPartition::new(4, vec![s(&[1, 2]), s(&[]), s(&[3, 4])]).is_err());
        let p = BlockPartition::new(4, vec![s(&[3, 4]), s(&[1, 2])]).unwrap();
        assert_eq!(p.labels(), vec![0, 0, 1, 1]);
    }
}

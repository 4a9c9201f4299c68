//! Subsets of `[n] = {1, …, n}` in increasing order.
//!
//! Indices are 1-based throughout, matching the textual bracket format and
//! the JSON hypergraph format. Column access into matrices subtracts one.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly increasing sequence of indices in `1..=ground`.
///
/// Ordering compares members lexicographically first, so sorting a list of
/// index sets over one ground set gives lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    members: Vec<usize>,
    ground: usize,
}

impl IndexSet {
    pub fn new(ground: usize, members: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > ground) {
            return Err(Error::InvalidIndexSet(format!("{bad} is outside 1..={ground}")));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!("{members:?} is not strictly increasing")));
        }
        Ok(IndexSet { members, ground })
    }

    /// Sorts `members` and reports the parity of the sorting permutation.
    /// Returns `Ok(None)` if an index repeats.
    pub fn sorted_with_parity(ground: usize, mut members: Vec<usize>) -> Result<Option<(Self, bool)>> {
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..members.len() {
            let mut j = i;
            while j > 0 && members[j - 1] > members[j] {
                members.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((IndexSet::new(ground, members)?, odd)))
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        IndexSet {
            members: (1..=n).collect(),
            ground: n,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Members shifted to 0-based column indices.
    pub fn zero_based(&self) -> Vec<usize> {
        self.members.iter().map(|i| i - 1).collect()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            members: (1..=self.ground).filter(|i| !self.contains(*i)).collect(),
            ground: self.ground,
        }
    }

    /// Number of adjacent transpositions taking `{1, …, k}` to this set:
    /// `Σ_j (i_j - j)`.
    pub fn s_index(&self) -> usize {
        self.members.iter().enumerate().map(|(j, &i)| i - (j + 1)).sum()
    }

    /// The image of `inner` under the increasing map `k ↦ self[k]`.
    /// Requires `inner.ground() == self.len()`.
    pub fn compose(&self, inner: &IndexSet) -> Result<IndexSet> {
        if inner.ground != self.len() {
            return Err(Error::Shape(format!(
                "cannot compose: inner ground {} but outer has {} members",
                inner.ground,
                self.len()
            )));
        }
        Ok(IndexSet {
            members: inner.members.iter().map(|&k| self.members[k - 1]).collect(),
            ground: self.ground,
        })
    }

    /// All `k`-subsets of `[ground]` in lexicographic order.
    pub fn subsets(ground: usize, k: usize) -> impl Iterator<Item = IndexSet> {
        (1..=ground)
            .combinations(k)
            .map(move |members| IndexSet { members, ground })
    }

    /// Position of this set in the colexicographic order of
    /// `len()`-subsets: `Σ_j C(i_j - 1, j)`.
    pub fn colex_rank(&self) -> usize {
        self.members
            .iter()
            .enumerate()
            .map(|(j, &i)| binomial(i - 1, j + 1))
            .sum()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(" "))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

//! Edge labels, label sets, and the 64-bit masks used for the heavy lifting.
//!
//! Every [`Multigraph`](crate::Multigraph) keeps its edges sorted by label, so
//! bit `i` of a mask is the `i`-th smallest label of that graph. Masks are only
//! meaningful relative to the ground set they were built against; [`EdgeSet`]
//! is the label-level currency that crosses API boundaries.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Edge label. Labels are positive and unique within a graph.
pub type Label = u32;

/// Bit mask over the edge indices of one ground set.
pub type Mask = u64;

/// Largest supported ground set.
pub const MAX_EDGES: usize = 64;

/// A finite set of edge labels.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<Label>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.contains(&label)
    }

    pub fn insert(&mut self, label: Label) -> bool {
        self.0.insert(label)
    }

    pub fn remove(&mut self, label: Label) -> bool {
        self.0.remove(&label)
    }

    /// Labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<Label> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn to_vec(&self) -> Vec<Label> {
        self.0.iter().copied().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Label> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Label; N]> for EdgeSet {
    fn from(labels: [Label; N]) -> Self {
        labels.into_iter().collect()
    }
}

impl IntoIterator for EdgeSet {
    type Item = Label;
    type IntoIter = std::collections::btree_set::IntoIter<Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Label;
    type IntoIter = std::collections::btree_set::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Indices of the set bits of `mask`, lowest first.
pub fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Drops bit `index` and shifts the higher bits down by one.
pub fn remove_bit(mask: Mask, index: usize) -> Mask {
    let low = mask & full_mask(index);
    let high = if index >= 63 { 0 } else { (mask >> (index + 1)) << index };
    low | high
}

/// All subsets of `set`, starting with the empty set.
pub fn subsets(set: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let current = next?;
        let following = current.wrapping_sub(set) & set;
        next = if following == 0 { None } else { Some(following) };
        Some(current)
    })
}

/// Relabels a mask through an index map: bit `i` moves to bit `map[i]`.
pub fn permute_mask(mask: Mask, map: &[usize]) -> Mask {
    bits(mask).fold(0, |acc, i| acc | (1 << map[i]))
}

use std::fmt;

use super::leaves::LeafSet;
use super::{PairSet, SetBackend, VertexPair};
use crate::fingertree::{Measure, Monoid};

fn key(p: &VertexPair) -> u64 {
    (u64::from(p.first) << 32) | u64::from(p.second)
}

fn pair(k: u64) -> VertexPair {
    VertexPair::new((k >> 32) as u32, k as u32)
}

/// Persistent ordered set of pairs, lexicographic on `(first, second)`.
#[derive(Clone, Default)]
pub struct OrderedPairSet {
    keys: LeafSet,
}

impl OrderedPairSet {
    pub fn new() -> Self {
        OrderedPairSet::default()
    }

    /// Pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = VertexPair> + '_ {
        self.keys.iter().map(pair)
    }

    #[cfg(test)]
    pub(crate) fn check_layout(&self) -> Result<(), String> {
        self.keys.check()
    }
}

impl Monoid for OrderedPairSet {
    fn empty() -> Self {
        OrderedPairSet::new()
    }

    fn combine(&self, other: &Self) -> Self {
        self.union(other)
    }
}

impl Measure<VertexPair> for OrderedPairSet {
    fn measure_of(p: &VertexPair) -> Self {
        OrderedPairSet {
            keys: LeafSet::singleton(key(p)),
        }
    }
}

impl PairSet for OrderedPairSet {
    const BACKEND: SetBackend = SetBackend::Ordered;

    fn member(&self, p: &VertexPair) -> bool {
        self.keys.contains(key(p))
    }

    fn insert(&self, p: VertexPair) -> Self {
        self.union(&Self::singleton(p))
    }

    fn union(&self, other: &Self) -> Self {
        OrderedPairSet {
            keys: self.keys.union(&other.keys),
        }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn to_sorted_vec(&self) -> Vec<VertexPair> {
        self.iter().collect()
    }
}

impl PartialEq for OrderedPairSet {
    fn eq(&self, other: &Self) -> bool {
        self.keys.ptr_eq(&other.keys)
            || (self.len() == other.len() && self.keys.iter().eq(other.keys.iter()))
    }
}

impl Eq for OrderedPairSet {}

impl fmt::Debug for OrderedPairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

use std::fmt;

use super::{PairSet, SetBackend, VertexPair};
use crate::fingertree::{Measure, Monoid};

/// Persistent hashed set of pairs (hash array mapped trie).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HashedPairSet {
    inner: im::HashSet<VertexPair>,
}

impl HashedPairSet {
    pub fn new() -> Self {
        HashedPairSet {
            inner: im::HashSet::new(),
        }
    }
}

impl Monoid for HashedPairSet {
    fn empty() -> Self {
        HashedPairSet::new()
    }

    fn combine(&self, other: &Self) -> Self {
        self.union(other)
    }
}

impl Measure<VertexPair> for HashedPairSet {
    fn measure_of(p: &VertexPair) -> Self {
        HashedPairSet {
            inner: im::HashSet::unit(*p),
        }
    }
}

impl PairSet for HashedPairSet {
    const BACKEND: SetBackend = SetBackend::Hashed;

    fn member(&self, p: &VertexPair) -> bool {
        self.inner.contains(p)
    }

    fn insert(&self, p: VertexPair) -> Self {
        HashedPairSet {
            inner: self.inner.update(p),
        }
    }

    fn union(&self, other: &Self) -> Self {
        if other.inner.is_empty() {
            return self.clone();
        }
        if self.inner.is_empty() {
            return other.clone();
        }
        // im folds the smaller operand into the larger one.
        HashedPairSet {
            inner: self.inner.clone().union(other.inner.clone()),
        }
    }

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn to_sorted_vec(&self) -> Vec<VertexPair> {
        let mut v: Vec<VertexPair> = self.inner.iter().copied().collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for HashedPairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_sorted_vec()).finish()
    }
}

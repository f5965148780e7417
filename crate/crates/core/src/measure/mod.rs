//! Set-of-pairs measures used to annotate Euler-tour finger trees.
//!
//! The monoid is set union with the empty set as identity. Two persistent
//! backends implement [`PairSet`]:
//!
//! * [`OrderedPairSet`]: sorted leaves of up to 64 keys under a sorted
//!   directory, ordered by `(first, second)`.
//! * [`HashedPairSet`]: hash array mapped trie.
//!
//! Both are immutable values; `insert` and `union` return new sets and share
//! structure with their inputs.

mod hashed;
mod leaves;
mod ordered;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fingertree::{Disjunctive, Measure};

pub use hashed::HashedPairSet;
pub use ordered::OrderedPairSet;

/// Vertex label. Labels are nonnegative by construction.
pub type VertexId = u32;

/// `(v, v)` stands for vertex `v`; `(u, v)` with `u != v` is the traversal
/// of the undirected edge `{u, v}` from `u` to `v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    pub first: VertexId,
    pub second: VertexId,
}

impl VertexPair {
    pub const fn new(first: VertexId, second: VertexId) -> Self {
        VertexPair { first, second }
    }

    /// The pair `(v, v)`.
    pub const fn vertex(v: VertexId) -> Self {
        VertexPair {
            first: v,
            second: v,
        }
    }

    pub const fn is_vertex(&self) -> bool {
        self.first == self.second
    }

    /// `(v, u)` for `(u, v)`.
    pub const fn mate(&self) -> Self {
        VertexPair {
            first: self.second,
            second: self.first,
        }
    }
}

impl fmt::Debug for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<(VertexId, VertexId)> for VertexPair {
    fn from((a, b): (VertexId, VertexId)) -> Self {
        VertexPair::new(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vertex id {0} is outside 0..=4294967295")]
pub struct InvalidVertex(pub i64);

/// Converts a signed label, rejecting negatives and values that do not fit.
pub fn vertex_id(raw: i64) -> Result<VertexId, InvalidVertex> {
    VertexId::try_from(raw).map_err(|_| InvalidVertex(raw))
}

/// Which [`PairSet`] implementation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetBackend {
    Ordered,
    Hashed,
}

impl SetBackend {
    pub const ALL: [SetBackend; 2] = [SetBackend::Ordered, SetBackend::Hashed];

    pub fn name(self) -> &'static str {
        match self {
            SetBackend::Ordered => "ordered",
            SetBackend::Hashed => "hashed",
        }
    }
}

impl fmt::Display for SetBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown set backend `{0}` (expected `ordered` or `hashed`)")]
pub struct UnknownBackend(pub String);

impl FromStr for SetBackend {
    type Err = UnknownBackend;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ordered" => Ok(SetBackend::Ordered),
            "hashed" => Ok(SetBackend::Hashed),
            other => Err(UnknownBackend(other.to_string())),
        }
    }
}

/// A persistent finite set of [`VertexPair`]s forming a monoid under union.
///
/// `measure_of(p)` is the singleton `{p}`.
pub trait PairSet: Measure<VertexPair> + PartialEq + fmt::Debug + Send + Sync + 'static {
    const BACKEND: SetBackend;

    fn singleton(p: VertexPair) -> Self {
        Self::measure_of(&p)
    }

    fn member(&self, p: &VertexPair) -> bool;

    fn insert(&self, p: VertexPair) -> Self;

    fn union(&self, other: &Self) -> Self;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn to_sorted_vec(&self) -> Vec<VertexPair>;
}

/// Search probe for "the accumulated prefix contains `pair`".
#[derive(Debug, Clone, Copy)]
pub struct MemberOf(pub VertexPair);

impl<S: PairSet> Disjunctive<S, VertexPair> for MemberOf {
    fn holds(&self, m: &S) -> bool {
        m.member(&self.0)
    }

    fn holds_for(&self, p: &VertexPair) -> bool {
        *p == self.0
    }
}

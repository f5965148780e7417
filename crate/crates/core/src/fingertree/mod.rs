//! Persistent 2-3 finger trees with cached monoidal measures.
//!
//! A [`FingerTree`] is an immutable sequence. Every operation returns a new
//! tree and leaves its inputs untouched; unchanged subtrees are shared through
//! `Arc`, so old versions stay valid and values may be sent across threads.
//!
//! Each internal node caches the combined measure of the elements beneath it.
//! Measures are computed eagerly when a node is built.
//!
//! | operation      | cost                                  |
//! |----------------|---------------------------------------|
//! | `view_left`    | amortized O(1)                        |
//! | `cons`, `snoc` | amortized O(1) node steps             |
//! | `concat`       | O(log(min(n1, n2))) node steps        |
//! | `search`       | O(log n) node steps                   |
//!
//! Every node step pays for one or more `combine` calls, so the wall-clock
//! cost also depends on the monoid.

mod tree;

use std::fmt;

use thiserror::Error;

pub use tree::Iter;
use tree::{Node, Tree};

/// A monoid: an associative `combine` with a two-sided identity `empty`.
pub trait Monoid: Clone {
    fn empty() -> Self;
    fn combine(&self, other: &Self) -> Self;
}

/// A monoid that knows how to measure a single element of type `E`.
pub trait Measure<E>: Monoid {
    fn measure_of(element: &E) -> Self;
}

/// A predicate on measures that distributes over `combine`:
/// `holds(a ⊕ b) == holds(a) || holds(b)` and `holds(empty) == false`.
///
/// Membership in a union-monoid is the canonical example. Such a predicate
/// is automatically monotone over accumulated prefixes, and the search only
/// needs to test it on individual cached measures, never on freshly combined
/// prefixes.
pub trait Disjunctive<M, E> {
    fn holds(&self, measure: &M) -> bool;

    /// Same as `holds(&M::measure_of(element))`, usually much cheaper.
    fn holds_for(&self, element: &E) -> bool;
}

/// Outcome of a search: the sequence split around the first hit, with the
/// hit excluded from both sides.
pub enum SearchResult<M, E> {
    Found {
        left: FingerTree<M, E>,
        hit: E,
        right: FingerTree<M, E>,
    },
    NotFound,
}

/// Left side, hit and right side of a successful search.
pub type Split<M, E> = (FingerTree<M, E>, E, FingerTree<M, E>);

impl<M, E> SearchResult<M, E> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found { .. })
    }

    pub fn found(self) -> Option<Split<M, E>> {
        match self {
            SearchResult::Found { left, hit, right } => Some((left, hit, right)),
            SearchResult::NotFound => None,
        }
    }
}

/// Structural violation found by [`FingerTree::check_invariants`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("digit at level {level} holds {len} elements (expected 1..=4)")]
    DigitArity { level: usize, len: usize },
    #[error("node at level {level} holds {len} children (expected 2 or 3)")]
    NodeArity { level: usize, len: usize },
    #[error("node kind does not match level {level}")]
    LevelMismatch { level: usize },
    #[error("cached measure at level {level} differs from the fold of its elements")]
    MeasureMismatch { level: usize },
}

/// A persistent sequence of `E` annotated with measures of type `M`.
pub struct FingerTree<M, E> {
    tree: Tree<M, E>,
}

impl<M, E: Clone> Clone for FingerTree<M, E> {
    fn clone(&self) -> Self {
        FingerTree {
            tree: self.tree.clone(),
        }
    }
}

impl<M: Measure<E>, E: Clone> FingerTree<M, E> {
    pub fn new() -> Self {
        FingerTree { tree: Tree::Empty }
    }

    pub fn singleton(element: E) -> Self {
        FingerTree {
            tree: Tree::Single(Node::Leaf(element)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Combined measure of all elements. O(1).
    pub fn measure(&self) -> M {
        self.tree.measure()
    }

    /// Inserts on the left.
    pub fn cons(&self, element: E) -> Self {
        FingerTree {
            tree: self.tree.push_front(Node::Leaf(element)),
        }
    }

    /// Inserts on the right.
    pub fn snoc(&self, element: E) -> Self {
        FingerTree {
            tree: self.tree.push_back(Node::Leaf(element)),
        }
    }

    pub fn view_left(&self) -> Option<(E, Self)> {
        self.tree
            .view_front()
            .map(|(n, rest)| (n.element().clone(), FingerTree { tree: rest }))
    }

    pub fn view_right(&self) -> Option<(Self, E)> {
        self.tree
            .view_back()
            .map(|(rest, n)| (FingerTree { tree: rest }, n.element().clone()))
    }

    /// Peeks at the first element without rebuilding the remainder.
    pub fn first(&self) -> Option<&E> {
        self.tree.first_leaf()
    }

    pub fn last(&self) -> Option<&E> {
        self.tree.last_leaf()
    }

    pub fn concat(&self, other: &Self) -> Self {
        FingerTree {
            tree: Tree::append3(&self.tree, Vec::new(), &other.tree),
        }
    }

    /// Finds the first element `x` such that `pred(before ⊕ x, after)` holds,
    /// where `before` and `after` are the measures of the elements on either
    /// side of `x`.
    ///
    /// `pred` must be monotone: false up to some point and true from there on.
    /// A non-monotone predicate still yields a valid split, but which one is
    /// unspecified.
    pub fn search<P>(&self, mut pred: P) -> SearchResult<M, E>
    where
        P: FnMut(&M, &M) -> bool,
    {
        if self.is_empty() {
            return SearchResult::NotFound;
        }
        let identity = M::empty();
        if !pred(&self.measure(), &identity) {
            return SearchResult::NotFound;
        }
        let (l, x, r) = self.tree.split_general(&mut pred, &identity, &identity);
        SearchResult::Found {
            left: FingerTree { tree: l },
            hit: x.element().clone(),
            right: FingerTree { tree: r },
        }
    }

    /// [`search`](Self::search) specialised to a [`Disjunctive`] predicate on
    /// the prefix. Tests the predicate against cached measures only, so no
    /// prefix measure is ever materialised during the descent.
    pub fn search_by<D: Disjunctive<M, E>>(&self, probe: &D) -> SearchResult<M, E> {
        let hit_somewhere = self.tree.holds(probe);
        if !hit_somewhere {
            return SearchResult::NotFound;
        }
        let (l, x, r) = self.tree.split_by(probe);
        SearchResult::Found {
            left: FingerTree { tree: l },
            hit: x.element().clone(),
            right: FingerTree { tree: r },
        }
    }

    /// Like [`search_by`](Self::search_by) but only returns the hit.
    pub fn find_by<D: Disjunctive<M, E>>(&self, probe: &D) -> Option<&E> {
        self.tree.locate(probe).map(Node::element)
    }

    pub fn iter(&self) -> Iter<'_, M, E> {
        Iter::new(&self.tree)
    }

    /// Number of elements. O(n).
    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn to_vec(&self) -> Vec<E> {
        self.iter().cloned().collect()
    }

    /// Walks the whole structure and checks digit and node arities, level
    /// discipline and that every cached measure equals the fold of the
    /// elements beneath it.
    pub fn check_invariants(&self) -> Result<(), AuditError>
    where
        M: PartialEq,
    {
        let folded = self.tree.audit(0)?;
        let expected = self
            .iter()
            .map(M::measure_of)
            .reduce(|a, b| a.combine(&b))
            .unwrap_or_else(M::empty);
        if folded != expected {
            return Err(AuditError::MeasureMismatch { level: 0 });
        }
        Ok(())
    }
}

impl<M: Measure<E>, E: Clone> Default for FingerTree<M, E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds by repeated `snoc`.
impl<M: Measure<E>, E: Clone> FromIterator<E> for FingerTree<M, E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        iter.into_iter().fold(Self::new(), |t, x| t.snoc(x))
    }
}

impl<'a, M: Measure<E>, E: Clone> IntoIterator for &'a FingerTree<M, E> {
    type Item = &'a E;
    type IntoIter = Iter<'a, M, E>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Element-wise equality; the internal shape is ignored.
impl<M: Measure<E>, E: Clone + PartialEq> PartialEq for FingerTree<M, E> {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl<M: Measure<E>, E: Clone + fmt::Debug> fmt::Debug for FingerTree<M, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests;

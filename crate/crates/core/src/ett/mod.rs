//! Euler-tour trees: one tree of a forest stored as the finger-tree sequence
//! of its tour.
//!
//! A vertex `v` appears once as `(v, v)` and every edge `{u, v}` appears once
//! in each direction, as `(u, v)` and `(v, u)`. The tour of a rooted tree is
//!
//! ```text
//! tour(v) = (v,v) ++ concat over children c of [(v,c)] ++ tour(c) ++ [(c,v)]
//! ```
//!
//! or a rotation of it. The first pair names the root. Every sequence node is
//! annotated with the set of pairs beneath it, which is what makes searching
//! for a pair logarithmic.

mod rose;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::fingertree::{AuditError, Disjunctive, FingerTree, Measure};
use crate::hooks;
use crate::measure::{MemberOf, PairSet, VertexId, VertexPair};

pub use rose::RoseTree;

/// A violation of the tour invariants, or a bad input tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TourError {
    #[error("vertex {0} occurs more than once")]
    DuplicateVertex(VertexId),
    #[error("edge pair {0} occurs more than once")]
    DuplicateEdge(VertexPair),
    #[error("edge pair {0} has no mate")]
    UnmatedEdge(VertexPair),
    #[error("edge pair {0} names a vertex that is not in the tour")]
    DanglingEdge(VertexPair),
    #[error("tour of {vertices} vertices has length {len}, expected 3n - 2")]
    WrongLength { vertices: usize, len: usize },
    #[error("pair at position {index} does not continue the walk")]
    BrokenWalk { index: usize },
    #[error("annotation does not equal the set of pairs in the tour")]
    AnnotationMismatch,
    #[error(transparent)]
    Structure(#[from] AuditError),
}

/// One tree of the forest as its Euler tour.
pub struct EulerTree<S> {
    seq: FingerTree<S, VertexPair>,
}

impl<S: PairSet> Clone for EulerTree<S> {
    fn clone(&self) -> Self {
        EulerTree {
            seq: self.seq.clone(),
        }
    }
}

fn concat<S: PairSet>(
    a: &FingerTree<S, VertexPair>,
    b: &FingerTree<S, VertexPair>,
) -> FingerTree<S, VertexPair> {
    hooks::concat();
    a.concat(b)
}

type Parts<S> = (FingerTree<S, VertexPair>, FingerTree<S, VertexPair>);

/// Splits around the first prefix containing `p`, dropping `p` itself.
fn split_at<S: PairSet>(seq: &FingerTree<S, VertexPair>, p: VertexPair) -> Option<Parts<S>> {
    hooks::split();
    seq.search_by(&MemberOf(p)).found().map(|(l, _, r)| (l, r))
}

impl<S: PairSet> EulerTree<S> {
    /// The empty tour.
    pub fn new() -> Self {
        EulerTree {
            seq: FingerTree::new(),
        }
    }

    /// The tour `[(v, v)]` of a single vertex.
    pub fn singleton(v: VertexId) -> Self {
        EulerTree {
            seq: FingerTree::singleton(VertexPair::vertex(v)),
        }
    }

    /// Builds the tour of `t` rooted at its label.
    pub fn from_rose_tree(t: &RoseTree) -> Result<Self, TourError> {
        let mut seen = std::collections::HashSet::new();
        let mut seq = FingerTree::new();
        let mut visit = |v: VertexId, seq: &mut FingerTree<S, VertexPair>| {
            if !seen.insert(v) {
                return Err(TourError::DuplicateVertex(v));
            }
            *seq = seq.snoc(VertexPair::vertex(v));
            Ok(())
        };
        visit(t.label, &mut seq)?;
        let mut stack: Vec<(&RoseTree, usize)> = vec![(t, 0)];
        while let Some((node, next)) = stack.last_mut() {
            let v = node.label;
            if let Some(child) = node.children.get(*next) {
                *next += 1;
                seq = seq.snoc(VertexPair::new(v, child.label));
                visit(child.label, &mut seq)?;
                stack.push((child, 0));
            } else {
                stack.pop();
                if let Some((parent, _)) = stack.last() {
                    seq = seq.snoc(VertexPair::new(v, parent.label));
                }
            }
        }
        Ok(EulerTree { seq })
    }

    /// Wraps an arbitrary pair sequence without checking it.
    pub fn from_pairs_unchecked<I: IntoIterator<Item = VertexPair>>(pairs: I) -> Self {
        EulerTree {
            seq: pairs.into_iter().collect(),
        }
    }

    pub fn seq(&self) -> &FingerTree<S, VertexPair> {
        &self.seq
    }

    /// Set of all pairs in the tour. O(1).
    pub fn annotation(&self) -> S {
        self.seq.measure()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Number of pairs. O(n).
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn to_vec(&self) -> Vec<VertexPair> {
        self.seq.to_vec()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexPair> {
        self.seq.iter()
    }

    /// Vertices in tour order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.seq.iter().filter(|p| p.is_vertex()).map(|p| p.first)
    }

    /// First component of the first pair. O(1).
    pub fn root(&self) -> Option<VertexId> {
        self.seq.first().map(|p| p.first)
    }

    /// Rotates the tour so that `(v, v)` comes first. Returns the tour
    /// unchanged when `v` is not in it.
    pub fn reroot(&self, v: VertexId) -> Self {
        let pv = VertexPair::vertex(v);
        match split_at(&self.seq, pv) {
            Some((left, right)) => EulerTree {
                seq: concat(&right, &left).cons(pv),
            },
            None => self.clone(),
        }
    }

    /// Whether `p` occurs in the tour. One membership search, no split.
    pub fn pair_in(&self, p: VertexPair) -> bool {
        hooks::probe();
        self.seq.find_by(&MemberOf(p)).is_some()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.pair_in(VertexPair::vertex(v))
    }

    /// Joins the tree `tu` containing `u` and the tree `tv` containing `v`
    /// with the edge `{u, v}`. `tu` is rerooted at `u` and hung below `v`.
    ///
    /// Returns `None` when `u` is not in `tu` or `v` is not in `tv`. The two
    /// tours must be disjoint.
    pub fn link_tree(u: VertexId, tu: &Self, v: VertexId, tv: &Self) -> Option<Self> {
        if !tu.pair_in(VertexPair::vertex(u)) || !tv.pair_in(VertexPair::vertex(v)) {
            return None;
        }
        let from = tu.reroot(u);
        let (left, right) = split_at(&tv.seq, VertexPair::vertex(v))?;
        let head = left.snoc(VertexPair::vertex(v)).snoc(VertexPair::new(v, u));
        let tail = right.cons(VertexPair::new(u, v));
        Some(EulerTree {
            seq: concat(&concat(&head, &from.seq), &tail),
        })
    }

    /// Removes the edge `{u, v}`. Returns the tour of the part hanging below
    /// the edge followed by the tour of the rest, or `None` when `(u, v)` or
    /// its mate `(v, u)` is missing.
    pub fn cut_tree(&self, u: VertexId, v: VertexId) -> Option<(Self, Self)> {
        let uv = VertexPair::new(u, v);
        let vu = uv.mate();
        let (left, right) = split_at(&self.seq, uv)?;
        if let Some((left_l, right_l)) = split_at(&left, vu) {
            return Some((
                EulerTree { seq: right_l },
                EulerTree {
                    seq: concat(&left_l, &right),
                },
            ));
        }
        let (left_r, right_r) = split_at(&right, vu)?;
        Some((
            EulerTree { seq: left_r },
            EulerTree {
                seq: concat(&left, &right_r),
            },
        ))
    }

    /// Checks the tour invariants: one `(v, v)` per vertex, every edge pair
    /// mated, length `3n - 2`, consecutive pairs forming a closed walk, and an
    /// annotation equal to the set of pairs.
    pub fn validate(&self) -> Result<(), TourError> {
        let pairs = self.to_vec();
        if pairs.is_empty() {
            return if self.annotation().is_empty() {
                Ok(())
            } else {
                Err(TourError::AnnotationMismatch)
            };
        }
        let mut counts: HashMap<VertexPair, usize> = HashMap::with_capacity(pairs.len());
        for p in &pairs {
            *counts.entry(*p).or_default() += 1;
        }
        let mut vertices = 0;
        for (p, &k) in &counts {
            if k > 1 {
                return Err(if p.is_vertex() {
                    TourError::DuplicateVertex(p.first)
                } else {
                    TourError::DuplicateEdge(*p)
                });
            }
            if p.is_vertex() {
                vertices += 1;
                continue;
            }
            if !counts.contains_key(&p.mate()) {
                return Err(TourError::UnmatedEdge(*p));
            }
            if !counts.contains_key(&VertexPair::vertex(p.first))
                || !counts.contains_key(&VertexPair::vertex(p.second))
            {
                return Err(TourError::DanglingEdge(*p));
            }
        }
        if pairs.len() != 3 * vertices - 2 {
            return Err(TourError::WrongLength {
                vertices,
                len: pairs.len(),
            });
        }
        for i in 0..pairs.len() {
            let next = pairs[(i + 1) % pairs.len()];
            if pairs[i].second != next.first {
                return Err(TourError::BrokenWalk {
                    index: (i + 1) % pairs.len(),
                });
            }
        }
        let mut sorted = pairs;
        sorted.sort_unstable();
        if self.annotation().to_sorted_vec() != sorted {
            return Err(TourError::AnnotationMismatch);
        }
        self.seq.check_invariants()?;
        Ok(())
    }
}

impl<S: PairSet> Default for EulerTree<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Sequence equality.
impl<S: PairSet> PartialEq for EulerTree<S> {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl<S: PairSet> fmt::Debug for EulerTree<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.seq, f)
    }
}

/// A tree inside a forest is measured by its whole annotation.
impl<S: PairSet> Measure<EulerTree<S>> for S {
    fn measure_of(t: &EulerTree<S>) -> S {
        t.annotation()
    }
}

impl<S: PairSet> Disjunctive<S, EulerTree<S>> for MemberOf {
    fn holds(&self, m: &S) -> bool {
        m.member(&self.0)
    }

    fn holds_for(&self, t: &EulerTree<S>) -> bool {
        t.seq.measure().member(&self.0)
    }
}

//! A forest of Euler-tour trees kept in a finger tree whose elements are the
//! trees themselves. Each tree is measured by its whole pair set, so the
//! forest can locate the tree holding a vertex with one search.
//!
//! `link` and `cut` never fail: invalid requests return the forest unchanged.
//! [`Forest::try_link`] and [`Forest::try_cut`] also report why.

use std::collections::HashSet;

use thiserror::Error;

use crate::ett::{EulerTree, TourError};
use crate::fingertree::{AuditError, FingerTree};
use crate::measure::{MemberOf, PairSet, VertexId, VertexPair};

/// Both vertices' trees and roots, as found by [`Forest::connected`].
#[derive(Debug, Clone)]
pub struct Detail<S: PairSet> {
    pub tree_x: EulerTree<S>,
    pub root_x: VertexId,
    pub tree_y: EulerTree<S>,
    pub root_y: VertexId,
}

#[derive(Debug, Clone)]
pub struct ConnectivityAnswer<S: PairSet> {
    pub connected: bool,
    /// Absent when either vertex is not in the forest. When `connected` is
    /// true, the `y` fields repeat the `x` fields.
    pub detail: Option<Detail<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkStatus {
    Linked,
    SameVertex,
    AlreadyConnected,
    MissingVertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutStatus {
    Cut,
    SameVertex,
    /// The vertices are in different trees, or one of them is missing.
    NotConnected,
    /// Connected, but `{x, y}` is not an edge of the tree.
    EdgeAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("tree {index}: {source}")]
    Tour { index: usize, source: TourError },
    #[error("tree {index} is empty")]
    EmptyTree { index: usize },
    #[error("vertex {0} appears in more than one tree")]
    SharedVertex(VertexId),
    #[error(transparent)]
    Structure(#[from] AuditError),
}

type Trees<S> = FingerTree<S, EulerTree<S>>;

/// A persistent forest. Cloning is O(1).
pub struct Forest<S: PairSet> {
    trees: Trees<S>,
}

impl<S: PairSet> Clone for Forest<S> {
    fn clone(&self) -> Self {
        Forest {
            trees: self.trees.clone(),
        }
    }
}

/// Splits `f` around the tree holding `v` and rejoins the sides.
fn without_tree<S: PairSet>(f: &Trees<S>, v: VertexId) -> Option<Trees<S>> {
    f.search_by(&MemberOf(VertexPair::vertex(v)))
        .found()
        .map(|(l, _, r)| l.concat(&r))
}

impl<S: PairSet> Forest<S> {
    pub fn new() -> Self {
        Forest {
            trees: FingerTree::new(),
        }
    }

    /// `n` one-vertex trees, `0..n`.
    pub fn of_singletons(n: usize) -> Self {
        let n = VertexId::try_from(n).expect("vertex count fits in a VertexId");
        Forest {
            trees: (0..n).map(EulerTree::singleton).collect(),
        }
    }

    pub fn from_trees<I: IntoIterator<Item = EulerTree<S>>>(trees: I) -> Self {
        Forest {
            trees: trees.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trees(&self) -> impl Iterator<Item = &EulerTree<S>> {
        self.trees.iter()
    }

    /// Number of trees. O(n).
    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    /// Union of every tree's pair set. O(1).
    pub fn annotation(&self) -> S {
        self.trees.measure()
    }

    /// The tree containing `v` and its root.
    pub fn search_for(&self, v: VertexId) -> Option<(EulerTree<S>, VertexId)> {
        let t = self.trees.find_by(&MemberOf(VertexPair::vertex(v)))?;
        Some((
            t.clone(),
            t.root().expect("trees in a forest are non-empty"),
        ))
    }

    pub fn connected(&self, x: VertexId, y: VertexId) -> ConnectivityAnswer<S> {
        let (Some((tx, rx)), Some((ty, ry))) = (self.search_for(x), self.search_for(y)) else {
            return ConnectivityAnswer {
                connected: false,
                detail: None,
            };
        };
        if rx == ry {
            ConnectivityAnswer {
                connected: true,
                detail: Some(Detail {
                    tree_x: tx.clone(),
                    root_x: rx,
                    tree_y: tx,
                    root_y: rx,
                }),
            }
        } else {
            ConnectivityAnswer {
                connected: false,
                detail: Some(Detail {
                    tree_x: tx,
                    root_x: rx,
                    tree_y: ty,
                    root_y: ry,
                }),
            }
        }
    }

    /// Shorthand for `connected(x, y).connected`.
    pub fn is_connected(&self, x: VertexId, y: VertexId) -> bool {
        self.connected(x, y).connected
    }

    /// Adds the edge `{x, y}` if it joins two different trees.
    pub fn link(&self, x: VertexId, y: VertexId) -> Self {
        self.try_link(x, y).0
    }

    pub fn try_link(&self, x: VertexId, y: VertexId) -> (Self, LinkStatus) {
        if x == y {
            return (self.clone(), LinkStatus::SameVertex);
        }
        let d = match self.connected(x, y) {
            ConnectivityAnswer {
                connected: false,
                detail: Some(d),
            } => d,
            ConnectivityAnswer {
                connected: true, ..
            } => return (self.clone(), LinkStatus::AlreadyConnected),
            ConnectivityAnswer { detail: None, .. } => {
                return (self.clone(), LinkStatus::MissingVertex)
            }
        };
        let Some(joined) = EulerTree::link_tree(x, &d.tree_x, y, &d.tree_y) else {
            return (self.clone(), LinkStatus::MissingVertex);
        };
        let rest = without_tree(&self.trees, x)
            .and_then(|f| without_tree(&f, y))
            .expect("both trees were just found");
        (
            Forest {
                trees: rest.cons(joined),
            },
            LinkStatus::Linked,
        )
    }

    /// Removes the tree edge `{x, y}` if present.
    pub fn cut(&self, x: VertexId, y: VertexId) -> Self {
        self.try_cut(x, y).0
    }

    pub fn try_cut(&self, x: VertexId, y: VertexId) -> (Self, CutStatus) {
        if x == y {
            return (self.clone(), CutStatus::SameVertex);
        }
        let tx = match self.connected(x, y) {
            ConnectivityAnswer {
                connected: true,
                detail: Some(d),
            } => d.tree_x,
            _ => return (self.clone(), CutStatus::NotConnected),
        };
        let Some((t2, t3)) = tx.cut_tree(x, y) else {
            return (self.clone(), CutStatus::EdgeAbsent);
        };
        let rest = without_tree(&self.trees, x).expect("tree was just found");
        (
            Forest {
                trees: rest.cons(t3).cons(t2),
            },
            CutStatus::Cut,
        )
    }

    /// Vertex sets of the trees, each sorted, in sorted order.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = self
            .trees
            .iter()
            .map(|t| {
                let mut vs: Vec<VertexId> = t.vertices().collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Validates every tour, checks that no vertex is shared between trees
    /// and audits the forest-level measures.
    pub fn validate(&self) -> Result<(), ForestError> {
        let mut seen = HashSet::new();
        for (index, t) in self.trees.iter().enumerate() {
            if t.is_empty() {
                return Err(ForestError::EmptyTree { index });
            }
            t.validate()
                .map_err(|source| ForestError::Tour { index, source })?;
            for v in t.vertices() {
                if !seen.insert(v) {
                    return Err(ForestError::SharedVertex(v));
                }
            }
        }
        self.trees.check_invariants()?;
        Ok(())
    }
}

impl<S: PairSet> Default for Forest<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: PairSet> std::fmt::Debug for Forest<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.trees.iter()).finish()
    }
}

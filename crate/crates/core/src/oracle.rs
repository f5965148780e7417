//! Brute-force references for testing: an explicit edge set answering
//! connectivity by graph search, and a union-find for insert-only use.

use std::collections::{HashSet, VecDeque};

use crate::measure::VertexId;

fn key(x: VertexId, y: VertexId) -> (VertexId, VertexId) {
    (x.min(y), x.max(y))
}

/// A forest on `0..n` stored as its edge set.
#[derive(Debug, Clone, Default)]
pub struct NaiveForest {
    adj: Vec<Vec<VertexId>>,
    edges: HashSet<(VertexId, VertexId)>,
}

impl NaiveForest {
    pub fn new(n: usize) -> Self {
        NaiveForest {
            adj: vec![Vec::new(); n],
            edges: HashSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        self.adj.len() - self.edges.len()
    }

    fn in_range(&self, v: VertexId) -> bool {
        (v as usize) < self.adj.len()
    }

    pub fn has_edge(&self, x: VertexId, y: VertexId) -> bool {
        self.edges.contains(&key(x, y))
    }

    /// Edges as `(min, max)`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut v: Vec<_> = self.edges.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Breadth-first search from `x`, visiting only its component.
    pub fn connected(&self, x: VertexId, y: VertexId) -> bool {
        if !self.in_range(x) || !self.in_range(y) {
            return false;
        }
        if x == y {
            return true;
        }
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v as usize] {
                if w == y {
                    return true;
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Adds `{x, y}` when the vertices are distinct, in range and not yet
    /// connected. Returns whether the edge was added.
    pub fn link(&mut self, x: VertexId, y: VertexId) -> bool {
        if x == y || !self.in_range(x) || !self.in_range(y) || self.connected(x, y) {
            return false;
        }
        self.edges.insert(key(x, y));
        self.adj[x as usize].push(y);
        self.adj[y as usize].push(x);
        true
    }

    /// Removes `{x, y}` if present. Returns whether it was.
    pub fn cut(&mut self, x: VertexId, y: VertexId) -> bool {
        if !self.edges.remove(&key(x, y)) {
            return false;
        }
        self.adj[x as usize].retain(|&w| w != y);
        self.adj[y as usize].retain(|&w| w != x);
        true
    }

    /// Vertex sets of the components, each sorted, in sorted order.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as VertexId];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i] as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_unstable();
        out
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; false if they were already one set.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

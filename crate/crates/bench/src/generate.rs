//! Seeded generation of traces that contain only effective operations.

use ettforest::oracle::{NaiveForest, UnionFind};
use ettforest::VertexId;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trace::{OpKind, Trace, TraceOp};

/// Random links that each join two different components, until one tree
/// spans all `n` vertices. Always `n - 1` links.
pub fn incremental_trace(n: usize, seed: u64) -> Trace {
    assert!(n >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uf = UnionFind::new(n);
    let mut ops = Vec::with_capacity(n - 1);
    while uf.set_count() > 1 {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if uf.union(x, y) {
            ops.push(TraceOp::new(OpKind::Link, x as VertexId, y as VertexId));
        }
    }
    Trace { n, ops }
}

/// Draws a random valid link, or `None` once the forest is a spanning tree.
fn pick_link(oracle: &mut NaiveForest, rng: &mut ChaCha8Rng) -> Option<(VertexId, VertexId)> {
    let n = oracle.vertex_count() as VertexId;
    if oracle.component_count() <= 1 {
        return None;
    }
    loop {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if oracle.link(x, y) {
            return Some((x, y));
        }
    }
}

/// A query partner for `x`: half the time the end of a short random walk
/// from `x`, so that positive answers are common; otherwise uniform.
fn pick_query(
    oracle: &NaiveForest,
    adj: &[Vec<VertexId>],
    rng: &mut ChaCha8Rng,
) -> (VertexId, VertexId) {
    let n = oracle.vertex_count() as VertexId;
    let x = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        let mut y = x;
        for _ in 0..rng.gen_range(1..8) {
            match adj[y as usize].choose(rng) {
                Some(&w) => y = w,
                None => break,
            }
        }
        (x, y)
    } else {
        (x, rng.gen_range(0..n))
    }
}

/// `m` operations, each kind chosen uniformly. Links join different trees,
/// cuts remove an existing edge, queries may ask anything. A link on a
/// spanning tree becomes a cut and a cut on an edgeless forest becomes a link.
pub fn interleaved_trace(n: usize, m: usize, seed: u64) -> Trace {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = NaiveForest::new(n);
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut ops = Vec::with_capacity(m);
    for _ in 0..m {
        let mut kind = OpKind::ALL[rng.gen_range(0..3)];
        if kind == OpKind::Link && oracle.component_count() <= 1 {
            kind = OpKind::Cut;
        } else if kind == OpKind::Cut && edges.is_empty() {
            kind = OpKind::Link;
        }
        let op = match kind {
            OpKind::Link => {
                let (x, y) = pick_link(&mut oracle, &mut rng).expect("forest is not spanning");
                adj[x as usize].push(y);
                adj[y as usize].push(x);
                edges.push((x, y));
                TraceOp::new(kind, x, y)
            }
            OpKind::Cut => {
                let (x, y) = edges.swap_remove(rng.gen_range(0..edges.len()));
                assert!(oracle.cut(x, y));
                adj[x as usize].retain(|&w| w != y);
                adj[y as usize].retain(|&w| w != x);
                if rng.gen() {
                    TraceOp::new(kind, y, x)
                } else {
                    TraceOp::new(kind, x, y)
                }
            }
            OpKind::Query => {
                let (x, y) = pick_query(&oracle, &adj, &mut rng);
                TraceOp::new(kind, x, y)
            }
        };
        ops.push(op);
    }
    Trace { n, ops }
}

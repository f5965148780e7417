//! Persistent sorted set of `u64` keys: a directory of sorted leaves.
//!
//! Leaves hold `MIN..=CAP` keys (a set with a single leaf may hold fewer) and
//! are shared between sets through `Arc`. Lookup is two binary searches.
//! `union` walks both directories in key order, reuses every leaf whose key
//! range does not interleave with the other set, and merges the rest with
//! slice copies. Its cost is O(m + (n1 + n2) / MIN) for `m` keys in
//! interleaving leaves.

use std::sync::Arc;

pub(crate) const CAP: usize = 64;
pub(crate) const MIN: usize = 16;

type Leaf = Arc<[u64]>;

#[derive(Clone, Default)]
pub(crate) struct LeafSet {
    leaves: Option<Arc<[Leaf]>>,
    len: usize,
}

fn last(l: &Leaf) -> u64 {
    l[l.len() - 1]
}

impl LeafSet {
    pub(crate) fn singleton(k: u64) -> Self {
        LeafSet {
            leaves: Some(Arc::from([Arc::from([k]) as Leaf])),
            len: 1,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    fn leaves(&self) -> &[Leaf] {
        self.leaves.as_deref().unwrap_or(&[])
    }

    pub(crate) fn ptr_eq(&self, other: &Self) -> bool {
        match (&self.leaves, &other.leaves) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            (None, None) => true,
            _ => false,
        }
    }

    pub(crate) fn contains(&self, k: u64) -> bool {
        let leaves = self.leaves();
        let i = leaves.partition_point(|l| last(l) < k);
        leaves.get(i).is_some_and(|l| l.binary_search(&k).is_ok())
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.leaves().iter().flat_map(|l| l.iter().copied())
    }

    pub(crate) fn union(&self, other: &Self) -> Self {
        if other.len == 0 || self.ptr_eq(other) {
            return self.clone();
        }
        if self.len == 0 {
            return other.clone();
        }
        let mut out = Builder::with_capacity(self.leaves().len() + other.leaves().len());
        let (mut a, mut b) = (Cursor::new(self.leaves()), Cursor::new(other.leaves()));
        loop {
            let (x, y) = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    a.drain_into(&mut out);
                    break;
                }
                (None, Some(_)) => {
                    b.drain_into(&mut out);
                    break;
                }
                (Some(x), Some(y)) => (x, y),
            };
            if a.at_leaf_start() && a.leaf_last() < y {
                out.push_leaf(a.take_leaf());
            } else if b.at_leaf_start() && b.leaf_last() < x {
                out.push_leaf(b.take_leaf());
            } else if x < y {
                out.extend(a.take_below(y));
            } else if y < x {
                out.extend(b.take_below(x));
            } else {
                out.extend(&[x]);
                a.skip_one();
                b.skip_one();
            }
        }
        out.finish()
    }

    /// Checks ordering, leaf sizes and the cached length.
    #[cfg(test)]
    pub(crate) fn check(&self) -> Result<(), String> {
        let leaves = self.leaves();
        if self.leaves.is_some() && leaves.is_empty() {
            return Err("empty directory".into());
        }
        for l in leaves {
            if l.is_empty() || l.len() > CAP || (leaves.len() > 1 && l.len() < MIN) {
                return Err(format!("leaf of {} keys among {}", l.len(), leaves.len()));
            }
        }
        let keys: Vec<u64> = self.iter().collect();
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err("keys not strictly increasing".into());
        }
        if keys.len() != self.len {
            return Err("length cache wrong".into());
        }
        Ok(())
    }
}

struct Cursor<'a> {
    leaves: &'a [Leaf],
    leaf: usize,
    off: usize,
}

impl<'a> Cursor<'a> {
    fn new(leaves: &'a [Leaf]) -> Self {
        Cursor {
            leaves,
            leaf: 0,
            off: 0,
        }
    }

    fn peek(&self) -> Option<u64> {
        self.leaves.get(self.leaf).map(|l| l[self.off])
    }

    fn at_leaf_start(&self) -> bool {
        self.off == 0
    }

    fn leaf_last(&self) -> u64 {
        last(&self.leaves[self.leaf])
    }

    fn take_leaf(&mut self) -> &'a Leaf {
        let l = &self.leaves[self.leaf];
        self.leaf += 1;
        l
    }

    fn advance(&mut self, k: usize) {
        self.off += k;
        if self.off == self.leaves[self.leaf].len() {
            self.leaf += 1;
            self.off = 0;
        }
    }

    fn skip_one(&mut self) {
        self.advance(1);
    }

    /// Keys of the current leaf below `bound`, starting at the cursor.
    fn take_below(&mut self, bound: u64) -> &'a [u64] {
        let rest = &self.leaves[self.leaf][self.off..];
        let k = rest.partition_point(|&x| x < bound);
        self.advance(k);
        &rest[..k]
    }

    fn drain_into(&mut self, out: &mut Builder) {
        if self.off > 0 {
            out.extend(&self.leaves[self.leaf][self.off..]);
            self.leaf += 1;
            self.off = 0;
        }
        for l in &self.leaves[self.leaf..] {
            out.push_leaf(l);
        }
        self.leaf = self.leaves.len();
    }
}

/// Accumulates keys in increasing order into well-sized leaves.
struct Builder {
    leaves: Vec<Leaf>,
    pending: Vec<u64>,
    len: usize,
}

impl Builder {
    fn with_capacity(n: usize) -> Self {
        Builder {
            leaves: Vec::with_capacity(n),
            pending: Vec::with_capacity(CAP + MIN),
            len: 0,
        }
    }

    fn push_leaf(&mut self, l: &Leaf) {
        if self.pending.len() < MIN && !self.pending.is_empty() || l.len() < MIN {
            self.extend(l);
            return;
        }
        self.flush();
        self.len += l.len();
        self.leaves.push(l.clone());
    }

    fn extend(&mut self, keys: &[u64]) {
        self.len += keys.len();
        self.pending.extend_from_slice(keys);
        let mut start = 0;
        while self.pending.len() - start >= CAP + MIN {
            self.leaves
                .push(Arc::from(&self.pending[start..start + CAP]));
            start += CAP;
        }
        self.pending.drain(..start);
    }

    fn flush(&mut self) {
        let keys = &self.pending;
        match keys.len() {
            0 => return,
            k if k <= CAP => self.leaves.push(Arc::from(&keys[..])),
            k => {
                self.leaves.push(Arc::from(&keys[..k / 2]));
                self.leaves.push(Arc::from(&keys[k / 2..]));
            }
        }
        self.pending.clear();
    }

    fn finish(mut self) -> LeafSet {
        if !self.pending.is_empty() && self.pending.len() < MIN {
            if let Some(prev) = self.leaves.pop() {
                let mut keys = prev.to_vec();
                keys.extend_from_slice(&self.pending);
                self.pending = keys;
            }
        }
        self.flush();
        LeafSet {
            leaves: Some(Arc::from(self.leaves)),
            len: self.len,
        }
    }
}

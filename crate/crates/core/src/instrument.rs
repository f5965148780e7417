//! Per-thread operation counters for the tree surgery routines.
//!
//! Compiled into unit tests and into builds with the `instrument` feature;
//! otherwise every hook is an empty inline function.

use std::cell::Cell;

/// Counts accumulated on the current thread since the last [`reset`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    /// Searches whose result is taken apart into left and right sides.
    pub splits: u64,
    /// Membership-only searches (`pair_in`, `search_for`).
    pub probes: u64,
    /// Finger-tree concatenations.
    pub concats: u64,
}

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts { splits: 0, probes: 0, concats: 0 }) };
}

pub fn reset() {
    COUNTS.with(|c| c.set(OpCounts::default()));
}

pub fn snapshot() -> OpCounts {
    COUNTS.with(Cell::get)
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub(crate) fn split() {
    bump(|c| c.splits += 1);
}

pub(crate) fn probe() {
    bump(|c| c.probes += 1);
}

pub(crate) fn concat() {
    bump(|c| c.concats += 1);
}

//! Replaying traces against a forest, either timed or checked against the
//! brute-force oracle.

use std::hint::black_box;
use std::time::Instant;

use ettforest::forest::{CutStatus, LinkStatus};
use ettforest::{Forest, HashedPairSet, NaiveForest, OrderedPairSet, PairSet, SetBackend};

use crate::trace::{OpKind, Trace, TraceOp};

/// Timings of one pass over a trace.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunTiming {
    /// Wall time for the whole op loop, excluding forest construction.
    pub total_ns: u128,
    /// Per kind (`L`, `C`, `Q`): number of ops and the sum of their
    /// individually clocked times.
    pub by_kind: [(usize, u128); 3],
}

impl RunTiming {
    pub fn per_op_ns(&self, kind: OpKind) -> f64 {
        let (count, ns) = self.by_kind[kind.index()];
        if count == 0 {
            0.0
        } else {
            ns as f64 / count as f64
        }
    }
}

fn apply<S: PairSet>(f: &Forest<S>, op: &TraceOp) -> Forest<S> {
    match op.kind {
        OpKind::Link => f.link(op.x, op.y),
        OpKind::Cut => f.cut(op.x, op.y),
        OpKind::Query => {
            black_box(f.is_connected(op.x, op.y));
            f.clone()
        }
    }
}

fn run_ops<S: PairSet>(mut forest: Forest<S>, ops: &[TraceOp]) -> (Forest<S>, RunTiming) {
    let mut timing = RunTiming::default();
    let start = Instant::now();
    for op in ops {
        let t0 = Instant::now();
        forest = apply(&forest, op);
        let dt = t0.elapsed().as_nanos();
        let slot = &mut timing.by_kind[op.kind.index()];
        slot.0 += 1;
        slot.1 += dt;
    }
    timing.total_ns = start.elapsed().as_nanos();
    (black_box(forest), timing)
}

/// One timed pass. The clock starts after the singleton forest is built.
pub fn run_once<S: PairSet>(trace: &Trace) -> RunTiming {
    let forest = Forest::<S>::of_singletons(trace.n);
    run_ops(forest, &trace.ops).1
}

/// Applies `setup` untimed, then times `trace`.
pub fn run_after<S: PairSet>(setup: &Trace, trace: &Trace) -> RunTiming {
    let mut forest = Forest::<S>::of_singletons(setup.n);
    for op in &setup.ops {
        forest = apply(&forest, op);
    }
    run_ops(forest, &trace.ops).1
}

/// `runs` timed passes with the chosen backend.
pub fn timed(trace: &Trace, backend: SetBackend, runs: usize) -> Vec<RunTiming> {
    (0..runs)
        .map(|_| match backend {
            SetBackend::Ordered => run_once::<OrderedPairSet>(trace),
            SetBackend::Hashed => run_once::<HashedPairSet>(trace),
        })
        .collect()
}

/// Times the links of an incremental trace undone in reverse order, after
/// replaying the links untimed.
pub fn timed_cut_phase(trace: &Trace, backend: SetBackend, runs: usize) -> Vec<RunTiming> {
    let cuts = trace.reversed_cuts();
    (0..runs)
        .map(|_| match backend {
            SetBackend::Ordered => run_after::<OrderedPairSet>(trace, &cuts),
            SetBackend::Hashed => run_after::<HashedPairSet>(trace, &cuts),
        })
        .collect()
}

/// The first point where forest and oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub index: usize,
    pub op: TraceOp,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub ops: usize,
    pub queries: usize,
    pub positive_queries: usize,
    /// Answer to every query in trace order.
    pub answers: Vec<bool>,
    pub divergence: Option<Divergence>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Replays the trace against the forest and the oracle side by side. Link
/// and cut outcomes and every query answer must agree. With `validate`, the
/// whole forest is also validated after every op.
pub fn check<S: PairSet>(trace: &Trace, validate: bool) -> CheckReport {
    let mut forest = Forest::<S>::of_singletons(trace.n);
    let mut oracle = NaiveForest::new(trace.n);
    let mut report = CheckReport::default();
    for (index, op) in trace.ops.iter().enumerate() {
        let (expected, got) = match op.kind {
            OpKind::Link => {
                let (f, s) = forest.try_link(op.x, op.y);
                forest = f;
                (oracle.link(op.x, op.y), s == LinkStatus::Linked)
            }
            OpKind::Cut => {
                let (f, s) = forest.try_cut(op.x, op.y);
                forest = f;
                (oracle.cut(op.x, op.y), s == CutStatus::Cut)
            }
            OpKind::Query => {
                let want = oracle.connected(op.x, op.y);
                let got = forest.is_connected(op.x, op.y);
                report.queries += 1;
                report.positive_queries += usize::from(got);
                report.answers.push(got);
                (want, got)
            }
        };
        report.ops += 1;
        let mut diverged = (expected != got).then(|| (expected.to_string(), got.to_string()));
        if diverged.is_none() && validate {
            if let Err(e) = forest.validate() {
                diverged = Some(("valid forest".into(), e.to_string()));
            }
        }
        if let Some((expected, got)) = diverged {
            report.divergence = Some(Divergence {
                index,
                op: *op,
                expected,
                got,
            });
            return report;
        }
    }
    report
}

/// [`check`] with the backend picked at run time.
pub fn check_with(trace: &Trace, backend: SetBackend, validate: bool) -> CheckReport {
    match backend {
        SetBackend::Ordered => check::<OrderedPairSet>(trace, validate),
        SetBackend::Hashed => check::<HashedPairSet>(trace, validate),
    }
}

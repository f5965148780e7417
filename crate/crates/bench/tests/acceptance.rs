//! Acceptance checks. Prints one `PASS` or `FAIL` line per criterion.
//!
//! Correctness criteria abort the run when they fail. The two scaling
//! criteria are reported with their measured ratios and never abort, since
//! the bound is a property of the machine and the build as much as of the
//! code.

use std::io::Write;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ettforest::forest::Forest;
use ettforest::instrument;
use ettforest::oracle::NaiveForest;
use ettforest::{EulerTree, FingerTree, Measure, Monoid, OrderedPairSet, SetBackend, VertexId};
use ettforest_bench::record::median;
use ettforest_bench::{check_with, incremental_trace, interleaved_trace, timed, OpKind, Trace};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_SEEDS: u64 = 50;
const ORACLE_N: usize = 200;
const ORACLE_OPS: usize = 2000;
const LAW_CASES: u32 = 1000;
const MAX_ELEMENTS: usize = 1000;
const SURGERIES: usize = 1000;
const LINK_SPLITS: u64 = 2;
const LINK_CONCATS: u64 = 3;
const CUT_SPLITS: u64 = 3;
const CUT_CONCATS: u64 = 1;
const SCALING_SIZES: [usize; 4] = [2_500, 5_000, 10_000, 20_000];
const SCALING_RUNS: usize = 3;
const RATIO_BOUND: f64 = 1.5;
const SCALING_SEED: u64 = 1;
const INVERSE_CASES: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn oracle_traces() -> Vec<Trace> {
    (0..ORACLE_SEEDS)
        .map(|seed| interleaved_trace(ORACLE_N, ORACLE_OPS, seed))
        .collect()
}

fn oracle_equivalence(traces: &[Trace]) -> Outcome {
    let mut queries = 0;
    for (seed, t) in traces.iter().enumerate() {
        let r = check_with(t, SetBackend::Ordered, false);
        if let Some(d) = r.divergence {
            return fail(format!("seed {seed}: {d:?}"));
        }
        queries += r.queries;
    }
    pass(format!(
        "{} traces, {queries} queries, all agree",
        traces.len()
    ))
}

fn tour_well_formedness(traces: &[Trace]) -> Outcome {
    let mut checks = 0;
    for (seed, t) in traces.iter().enumerate() {
        let r = check_with(t, SetBackend::Ordered, true);
        if let Some(d) = r.divergence {
            return fail(format!("seed {seed}: {d:?}"));
        }
        checks += r.ops;
    }
    pass(format!("forest validated after each of {checks} ops"))
}

/// Element count, enough to search by position.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Size(usize);

impl Monoid for Size {
    fn empty() -> Self {
        Size(0)
    }

    fn combine(&self, other: &Self) -> Self {
        Size(self.0 + other.0)
    }
}

impl Measure<u32> for Size {
    fn measure_of(_: &u32) -> Self {
        Size(1)
    }
}

type Seq = FingerTree<Size, u32>;

/// Builds `xs` by consing the part before `k` and snocing the rest, so that
/// cases differ in shape as well as content.
fn build(xs: &[u32], k: usize) -> Seq {
    let k = k.min(xs.len());
    let front = xs[..k].iter().rev().fold(Seq::new(), |t, &x| t.cons(x));
    xs[k..].iter().fold(front, |t, &x| t.snoc(x))
}

fn audited(t: &Seq, want: &[u32]) -> Result<(), TestCaseError> {
    prop_assert_eq!(t.to_vec(), want.to_vec());
    prop_assert!(t.check_invariants().is_ok(), "{:?}", t.check_invariants());
    prop_assert_eq!(t.measure(), Size(want.len()));
    Ok(())
}

fn list() -> impl Strategy<Value = (Vec<u32>, usize)> {
    (
        prop::collection::vec(any::<u32>(), 0..=MAX_ELEMENTS),
        any::<usize>(),
    )
        .prop_map(|(xs, k)| {
            let k = if xs.is_empty() { 0 } else { k % (xs.len() + 1) };
            (xs, k)
        })
}

fn runner() -> TestRunner {
    let config = Config {
        cases: LAW_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finger_tree_laws() -> Outcome {
    let mut runs: Vec<(&str, Result<(), String>)> = Vec::new();

    let r = runner().run(&(list(), any::<u32>()), |((xs, k), x)| {
        let t = build(&xs, k);
        audited(&t, &xs)?;
        let mut want = vec![x];
        want.extend(&xs);
        audited(&t.cons(x), &want)
    });
    runs.push(("cons", r.map_err(|e| e.to_string())));

    let r = runner().run(&(list(), any::<u32>()), |((xs, k), x)| {
        let mut want = xs.clone();
        want.push(x);
        audited(&build(&xs, k).snoc(x), &want)
    });
    runs.push(("snoc", r.map_err(|e| e.to_string())));

    let r = runner().run(&(list(), list()), |((xs, j), (ys, k))| {
        let (a, b) = (build(&xs, j), build(&ys, k));
        let want = [xs.clone(), ys.clone()].concat();
        audited(&a.concat(&b), &want)?;
        audited(&a, &xs)?;
        audited(&b, &ys)
    });
    runs.push(("concat", r.map_err(|e| e.to_string())));

    let r = runner().run(&list(), |(xs, k)| {
        let t = build(&xs, k);
        match (t.view_left(), xs.split_first()) {
            (None, None) => {}
            (Some((x, rest)), Some((y, tail))) => {
                prop_assert_eq!(x, *y);
                audited(&rest, tail)?;
            }
            (l, _) => prop_assert!(false, "view_left gave {:?}", l.map(|p| p.0)),
        }
        match (t.view_right(), xs.split_last()) {
            (None, None) => {}
            (Some((rest, x)), Some((y, init))) => {
                prop_assert_eq!(x, *y);
                audited(&rest, init)?;
            }
            (r, _) => prop_assert!(false, "view_right gave {:?}", r.map(|p| p.1)),
        }
        Ok(())
    });
    runs.push(("view", r.map_err(|e| e.to_string())));

    let r = runner().run(&(list(), 0..=MAX_ELEMENTS + 1), |((xs, k), i)| {
        let t = build(&xs, k);
        let found = t.search(|before, _| before.0 > i).found();
        match (found, xs.get(i)) {
            (None, None) => {}
            (Some((l, x, r)), Some(&want)) => {
                prop_assert_eq!(x, want);
                audited(&l, &xs[..i])?;
                audited(&r, &xs[i + 1..])?;
            }
            (got, _) => prop_assert!(false, "index {} of {}: {:?}", i, xs.len(), got.map(|p| p.1)),
        }
        Ok(())
    });
    runs.push(("search", r.map_err(|e| e.to_string())));

    let failed: Vec<String> = runs
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    if failed.is_empty() {
        pass(format!(
            "{LAW_CASES} cases each for cons, snoc, concat, view, search"
        ))
    } else {
        fail(failed.join("; "))
    }
}

/// A forest on `n` vertices after a random prefix of an incremental trace,
/// together with its oracle.
fn random_forest(
    rng: &mut ChaCha8Rng,
    n: usize,
    links: usize,
) -> (Forest<OrderedPairSet>, NaiveForest) {
    let trace = incremental_trace(n, rng.gen());
    let mut f = Forest::of_singletons(n);
    let mut o = NaiveForest::new(n);
    for op in trace.ops.iter().take(links) {
        f = f.link(op.x, op.y);
        assert!(o.link(op.x, op.y));
    }
    (f, o)
}

fn operation_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst_link, mut worst_cut) = (
        instrument::OpCounts::default(),
        instrument::OpCounts::default(),
    );
    for case in 0..SURGERIES {
        let n = rng.gen_range(2..=64);
        let links = rng.gen_range(0..=n - 2);
        let (f, _) = random_forest(&mut rng, n, links);
        let trees: Vec<&EulerTree<OrderedPairSet>> = f.trees().collect();
        let picked: Vec<_> = trees.choose_multiple(&mut rng, 2).copied().collect();
        let (tu, tv) = (picked[0], picked[1]);
        let u = *tu.vertices().collect::<Vec<_>>().choose(&mut rng).unwrap();
        let v = *tv.vertices().collect::<Vec<_>>().choose(&mut rng).unwrap();
        instrument::reset();
        let joined = EulerTree::link_tree(u, tu, v, tv);
        let c = instrument::snapshot();
        let Some(joined) = joined else {
            return fail(format!("link case {case}: link_tree refused ({u}, {v})"));
        };
        if let Err(e) = joined.validate() {
            return fail(format!("link case {case}: {e}"));
        }
        if c.splits > LINK_SPLITS || c.concats > LINK_CONCATS {
            return fail(format!("link case {case}: {c:?}"));
        }
        worst_link.splits = worst_link.splits.max(c.splits);
        worst_link.concats = worst_link.concats.max(c.concats);
        worst_link.probes = worst_link.probes.max(c.probes);

        let edges: Vec<_> = joined.iter().filter(|p| !p.is_vertex()).copied().collect();
        let e = *edges.choose(&mut rng).unwrap();
        instrument::reset();
        let parts = joined.cut_tree(e.first, e.second);
        let c = instrument::snapshot();
        let Some((below, rest)) = parts else {
            return fail(format!("cut case {case}: cut_tree refused {e}"));
        };
        if let Err(err) = below.validate().and(rest.validate()) {
            return fail(format!("cut case {case}: {err}"));
        }
        if below.len() + rest.len() + 2 != joined.len() {
            return fail(format!("cut case {case}: sizes do not add up"));
        }
        if c.splits > CUT_SPLITS || c.concats != CUT_CONCATS {
            return fail(format!("cut case {case}: {c:?}"));
        }
        worst_cut.splits = worst_cut.splits.max(c.splits);
        worst_cut.concats = worst_cut.concats.max(c.concats);
        worst_cut.probes = worst_cut.probes.max(c.probes);
    }
    pass(format!(
        "{SURGERIES} links (max splits {}, concats {}, probes {}) and {SURGERIES} cuts (max splits {}, concats {})",
        worst_link.splits, worst_link.concats, worst_link.probes, worst_cut.splits, worst_cut.concats
    ))
}

fn ratios(times: &[f64]) -> Vec<f64> {
    times.windows(2).map(|w| w[1] / w[0]).collect()
}

fn fmt_series(times: &[f64]) -> String {
    let t: Vec<String> = times.iter().map(|x| format!("{:.1}us", x / 1e3)).collect();
    let r: Vec<String> = ratios(times).iter().map(|x| format!("{x:.2}")).collect();
    format!("[{}] ratios [{}]", t.join(", "), r.join(", "))
}

fn within_bound(times: &[f64]) -> bool {
    ratios(times).iter().all(|&r| r < RATIO_BOUND)
}

fn median_per_op(runs: &[ettforest_bench::RunTiming], kind: OpKind) -> f64 {
    median(&runs.iter().map(|r| r.per_op_ns(kind)).collect::<Vec<_>>())
}

fn incremental_scaling() -> Outcome {
    let mut times = Vec::new();
    for n in SCALING_SIZES {
        let trace = incremental_trace(n, SCALING_SEED);
        let runs = timed(&trace, SetBackend::Ordered, SCALING_RUNS);
        times.push(median_per_op(&runs, OpKind::Link));
    }
    let detail = format!("per-link {}, bound {RATIO_BOUND}", fmt_series(&times));
    if within_bound(&times) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn interleaved_scaling() -> Outcome {
    let mut series = [Vec::new(), Vec::new(), Vec::new()];
    for n in SCALING_SIZES {
        let trace = interleaved_trace(n, n, SCALING_SEED);
        let runs = timed(&trace, SetBackend::Ordered, SCALING_RUNS);
        for kind in OpKind::ALL {
            series[kind.index()].push(median_per_op(&runs, kind));
        }
    }
    let detail: Vec<String> = OpKind::ALL
        .iter()
        .map(|k| format!("{} {}", k.letter(), fmt_series(&series[k.index()])))
        .collect();
    let detail = format!("{}; bound {RATIO_BOUND}", detail.join("; "));
    if series.iter().all(|s| within_bound(s)) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn backend_comparison(traces: &[Trace]) -> Outcome {
    for (seed, t) in traces.iter().enumerate() {
        let a = check_with(t, SetBackend::Ordered, false);
        let b = check_with(t, SetBackend::Hashed, false);
        if !a.ok() || !b.ok() {
            return fail(format!(
                "seed {seed}: divergence {:?} {:?}",
                a.divergence, b.divergence
            ));
        }
        if a.answers != b.answers {
            return fail(format!("seed {seed}: backends answer differently"));
        }
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let trace = dir.path().join("mix.txt");
    let csv = dir.path().join("out.csv");
    let bin = env!("CARGO_BIN_EXE_ettforest-bench");
    let gen = Command::new(bin)
        .args([
            "gen-mix", "--n", "200", "--ops", "2000", "--seed", "0", "--out",
        ])
        .arg(&trace)
        .status()
        .expect("run gen-mix");
    let replay = Command::new(bin)
        .args([
            "replay",
            "--backend",
            "ordered",
            "--backend",
            "hashed",
            "--mode",
            "timed",
            "--trace",
        ])
        .arg(&trace)
        .arg("--csv")
        .arg(&csv)
        .output()
        .expect("run replay");
    if !gen.success() || !replay.status.success() {
        return fail("bench CLI exited with failure");
    }
    let mut reader = csv::Reader::from_path(&csv).expect("read csv");
    let backends: Vec<String> = reader
        .records()
        .map(|r| r.expect("csv row")[5].to_string())
        .collect();
    for b in SetBackend::ALL {
        if !backends.iter().any(|x| x == b.name()) {
            return fail(format!("CSV has no rows for {b}"));
        }
    }
    pass(format!(
        "{} traces answer identically; CSV lists both backends",
        traces.len()
    ))
}

fn inverse_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..INVERSE_CASES {
        let n = rng.gen_range(2..=100);
        let links = rng.gen_range(0..=n - 2);
        let (f, o) = random_forest(&mut rng, n, links);
        let (x, y) = loop {
            let (x, y) = (
                rng.gen_range(0..n) as VertexId,
                rng.gen_range(0..n) as VertexId,
            );
            if x != y && !o.connected(x, y) {
                break (x, y);
            }
        };
        let linked = f.link(x, y);
        let back = if rng.gen() {
            linked.cut(x, y)
        } else {
            linked.cut(y, x)
        };
        if !linked.is_connected(x, y) || back.components() != f.components() {
            return fail(format!("case {case}: n {n}, edge ({x}, {y})"));
        }
        if let Err(e) = back.validate() {
            return fail(format!("case {case}: {e}"));
        }
    }
    pass(format!("{INVERSE_CASES} cases restore the partition"))
}

fn main() -> ExitCode {
    let traces = oracle_traces();
    let mut hard_failures = 0;
    let mut failures = 0;
    let mut report = |id: u32, name: &str, scaling: bool, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {id} {name}: {} ({secs:.1}s)", o.detail);
        std::io::stdout().flush().ok();
        if !o.pass {
            failures += 1;
            if !scaling {
                hard_failures += 1;
            }
        }
    };
    report(1, "oracle equivalence", false, &mut || {
        oracle_equivalence(&traces)
    });
    report(2, "tour well-formedness", false, &mut || {
        tour_well_formedness(&traces)
    });
    report(3, "finger-tree laws", false, &mut finger_tree_laws);
    report(4, "operation counts", false, &mut operation_counts);
    report(7, "backend comparison", false, &mut || {
        backend_comparison(&traces)
    });
    report(8, "inverse property", false, &mut inverse_property);
    report(5, "incremental scaling", true, &mut incremental_scaling);
    report(6, "interleaved scaling", true, &mut interleaved_scaling);
    println!("{} of 8 criteria passed", 8 - failures);
    if hard_failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

//! Benchmark summaries and their CSV form.

use std::io;
use std::path::Path;

use ettforest::SetBackend;

use crate::replay::RunTiming;
use crate::trace::OpKind;

pub const CSV_HEADER: [&str; 8] = [
    "label",
    "n",
    "op_count",
    "total_ns",
    "per_op_ns",
    "backend",
    "min_total_ns",
    "max_total_ns",
];

/// Mean over runs, plus the extremes.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub label: String,
    pub n: usize,
    pub op_count: usize,
    pub total_ns: u128,
    pub per_op_ns: u128,
    pub backend: SetBackend,
    pub min_total_ns: u128,
    pub max_total_ns: u128,
}

impl BenchRecord {
    fn from_totals(
        label: String,
        n: usize,
        op_count: usize,
        backend: SetBackend,
        totals: &[u128],
    ) -> Self {
        let total_ns = if totals.is_empty() {
            0
        } else {
            totals.iter().sum::<u128>() / totals.len() as u128
        };
        BenchRecord {
            label,
            n,
            op_count,
            total_ns,
            per_op_ns: if op_count == 0 {
                0
            } else {
                total_ns / op_count as u128
            },
            backend,
            min_total_ns: totals.iter().copied().min().unwrap_or(0),
            max_total_ns: totals.iter().copied().max().unwrap_or(0),
        }
    }

    /// One record for the whole trace (loop wall time) followed by one per
    /// op kind present (sum of per-op times), labelled `label/L` etc.
    pub fn summarize(
        label: &str,
        n: usize,
        backend: SetBackend,
        runs: &[RunTiming],
    ) -> Vec<BenchRecord> {
        let ops = runs
            .first()
            .map_or(0, |r| r.by_kind.iter().map(|k| k.0).sum());
        let totals: Vec<u128> = runs.iter().map(|r| r.total_ns).collect();
        let mut out = vec![Self::from_totals(
            label.to_string(),
            n,
            ops,
            backend,
            &totals,
        )];
        for kind in OpKind::ALL {
            let count = runs.first().map_or(0, |r| r.by_kind[kind.index()].0);
            if count == 0 {
                continue;
            }
            let totals: Vec<u128> = runs.iter().map(|r| r.by_kind[kind.index()].1).collect();
            out.push(Self::from_totals(
                format!("{label}/{}", kind.letter()),
                n,
                count,
                backend,
                &totals,
            ));
        }
        out
    }

    fn fields(&self) -> [String; 8] {
        [
            self.label.clone(),
            self.n.to_string(),
            self.op_count.to_string(),
            self.total_ns.to_string(),
            self.per_op_ns.to_string(),
            self.backend.to_string(),
            self.min_total_ns.to_string(),
            self.max_total_ns.to_string(),
        ]
    }
}

pub fn write_csv<W: io::Write>(records: &[BenchRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record(r.fields())?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BenchRecord], path: &Path) -> csv::Result<()> {
    write_csv(records, std::fs::File::create(path)?)
}

/// Median of a non-empty slice (upper median for even lengths).
pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ettforest::SetBackend;
use ettforest_bench::record::BenchRecord;
use ettforest_bench::{
    check_with, emit_csv, incremental_trace, interleaved_trace, timed, timed_cut_phase, Trace,
};

#[derive(Parser)]
#[command(version, about = "Generate and replay dynamic-forest operation traces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Links only, until a single tree spans all vertices.
    GenInc {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Uniformly mixed links, cuts and queries.
    GenMix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replays a trace file.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        /// Repeat to run several backends.
        #[arg(long = "backend", alias = "set-backend", value_parser = parse_backend, default_value = "ordered")]
        backends: Vec<SetBackend>,
        #[arg(long, value_enum, default_value_t = Mode::Timed)]
        mode: Mode,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        /// Also time undoing the trace's links in reverse order.
        #[arg(long)]
        cut_phase: bool,
        /// In checked mode, validate the whole forest after every op.
        #[arg(long)]
        validate: bool,
    },
    /// Seeded checked replays of mixed traces on both backends.
    Selftest {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        ops: usize,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Timed,
    Checked,
}

fn parse_backend(s: &str) -> Result<SetBackend, String> {
    s.parse()
        .map_err(|e: ettforest::measure::UnknownBackend| e.to_string())
}

fn label_of(path: &std::path::Path) -> String {
    path.file_stem()
        .map_or_else(|| "trace".into(), |s| s.to_string_lossy().into_owned())
}

fn main() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::GenInc { n, seed, out } => {
            anyhow::ensure!(n >= 1, "--n must be at least 1");
            incremental_trace(n, seed)
                .save(&out)
                .with_context(|| format!("writing {}", out.display()))?;
        }
        Cmd::GenMix { n, ops, seed, out } => {
            anyhow::ensure!(n >= 2, "--n must be at least 2");
            interleaved_trace(n, ops, seed)
                .save(&out)
                .with_context(|| format!("writing {}", out.display()))?;
        }
        Cmd::Replay {
            trace,
            mut backends,
            mode,
            csv,
            runs,
            cut_phase,
            validate,
        } => {
            let label = label_of(&trace);
            let t = Trace::load(&trace).with_context(|| format!("loading {}", trace.display()))?;
            backends.dedup();
            match mode {
                Mode::Checked => {
                    let mut ok = true;
                    for b in backends {
                        let r = check_with(&t, b, validate);
                        match &r.divergence {
                            None => {
                                println!("{label} {b}: {} ops, {} queries agree", r.ops, r.queries)
                            }
                            Some(d) => {
                                ok = false;
                                println!(
                                    "{label} {b}: divergence at op {} ({}): expected {}, got {}",
                                    d.index, d.op, d.expected, d.got
                                );
                            }
                        }
                    }
                    if !ok {
                        return Ok(ExitCode::FAILURE);
                    }
                }
                Mode::Timed => {
                    anyhow::ensure!(runs >= 1, "--runs must be at least 1");
                    let mut records = Vec::new();
                    for b in backends {
                        records.extend(BenchRecord::summarize(&label, t.n, b, &timed(&t, b, runs)));
                        if cut_phase {
                            let cuts = timed_cut_phase(&t, b, runs);
                            records.extend(BenchRecord::summarize(
                                &format!("{label}-cuts"),
                                t.n,
                                b,
                                &cuts,
                            ));
                        }
                    }
                    for r in &records {
                        println!(
                            "{:<24} {:<8} ops={:<8} total={:>12}ns per_op={:>9}ns",
                            r.label, r.backend, r.op_count, r.total_ns, r.per_op_ns
                        );
                    }
                    if let Some(path) = csv {
                        emit_csv(&records, &path)
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                }
            }
        }
        Cmd::Selftest { n, ops, seeds } => {
            anyhow::ensure!(n >= 2, "--n must be at least 2");
            let mut failed = 0;
            for seed in 0..seeds {
                let t = interleaved_trace(n, ops, seed);
                let answers: Vec<_> = SetBackend::ALL
                    .iter()
                    .map(|&b| check_with(&t, b, false))
                    .collect();
                let agree =
                    answers.iter().all(|r| r.ok()) && answers[0].answers == answers[1].answers;
                if !agree {
                    failed += 1;
                }
                println!("seed {seed}: {}", if agree { "ok" } else { "DIVERGED" });
            }
            if failed > 0 {
                println!("{failed} of {seeds} seeds diverged");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

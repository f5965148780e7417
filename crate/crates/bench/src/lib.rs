//! Trace generation, replay and timing for `ettforest`.

pub mod generate;
pub mod record;
pub mod replay;
pub mod trace;

pub use generate::{incremental_trace, interleaved_trace};
pub use record::{emit_csv, BenchRecord};
pub use replay::{check_with, timed, timed_cut_phase, CheckReport, RunTiming};
pub use trace::{OpKind, Trace, TraceError, TraceOp};

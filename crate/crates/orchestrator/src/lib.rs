//! Experiment automation over a device endpoint: planned operating-point
//! sweeps with per-point dwell, concurrent share and telemetry capture,
//! append-only JSONL logging, offline replay, and report export.
//!
//! The raw log is the source of truth. Every record a sweep produces can be
//! recomputed bit-identically from the log alone, and an interrupted sweep
//! resumes from its log without redoing completed points.

pub mod log;
pub mod plan;
pub mod record;
pub mod report;
pub mod sweep;

pub use log::{
    completed_indexes, read_log, replay_log, Header, LogLine, LogWriter, Replay, SCHEMA_VERSION,
};
pub use plan::{default_frequency_plan, default_voltage_plan, SweepAxis, SweepPlan};
pub use record::{
    summarize_point, AnalysisSettings, SpectralSummary, SweepRecord, TelemetrySummary,
};
pub use report::{export_report, Report, CSV_HEADER};
pub use sweep::run_sweep;

/// Anything that can stop a sweep, a replay, or an export.
#[derive(Debug, thiserror::Error)]
pub enum OrchestratorError {
    #[error("bad plan: {0}")]
    BadPlan(String),
    #[error("device: {0}")]
    Device(#[from] ghost::GhostError),
    #[error("log io: {0}")]
    Io(#[from] std::io::Error),
    #[error("log serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error("log line {line}: {detail}")]
    LogFormat { line: usize, detail: String },
    #[error("log was written for a different plan; refusing to resume")]
    PlanMismatch,
    #[error("analysis: {0}")]
    Analysis(String),
    #[error("no records to report")]
    NoRecords,
}

//! Append-only JSONL persistence and offline replay. One self-describing
//! line per item; the first line is a header carrying the full recipe, so a
//! log plus this module reproduces every record without the device.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use substrate::{OperatingPoint, ShareEvent, Telemetry};

use crate::plan::SweepPlan;
use crate::record::{summarize_point, AnalysisSettings, SweepRecord};
use crate::OrchestratorError;

/// Version stamped into every header; bump on any line-schema change.
pub const SCHEMA_VERSION: u32 = 1;

/// First line of every sweep log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub plan: SweepPlan,
    pub analysis: AnalysisSettings,
    pub device_model: String,
    pub started_unix_s: f64,
}

/// One line of the sweep log, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LogLine {
    Header(Header),
    PointStart { index: usize, point: OperatingPoint, t_wall_s: f64 },
    Share { index: usize, event: ShareEvent },
    Telemetry { index: usize, sample: Telemetry },
    Alarm { index: usize, alarm: sentinel::Alarm },
    PointEnd { index: usize, record: SweepRecord },
}

/// Single-writer append handle. Every line is flushed before the call
/// returns, so a crash never loses an acknowledged line.
pub struct LogWriter {
    out: BufWriter<File>,
}

impl LogWriter {
    /// Opens for append, creating the file if needed.
    pub fn append(path: &Path) -> Result<Self, OrchestratorError> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(LogWriter { out: BufWriter::new(file) })
    }

    pub fn write_line(&mut self, line: &LogLine) -> Result<(), OrchestratorError> {
        let mut text = serde_json::to_string(line)?;
        text.push('\n');
        self.out.write_all(text.as_bytes())?;
        self.out.flush()?;
        Ok(())
    }
}

/// Parse a sweep log. A torn final line (interrupted write) is dropped;
/// a malformed interior line is corruption and fails with its line number.
pub fn read_log(path: &Path) -> Result<Vec<LogLine>, OrchestratorError> {
    let reader = BufReader::new(File::open(path)?);
    let mut raw = Vec::new();
    for line in reader.lines() {
        raw.push(line?);
    }
    let mut lines = Vec::with_capacity(raw.len());
    for (i, text) in raw.iter().enumerate() {
        if text.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<LogLine>(text) {
            Ok(line) => lines.push(line),
            Err(_) if i + 1 == raw.len() => break,
            Err(e) => {
                return Err(OrchestratorError::LogFormat { line: i + 1, detail: e.to_string() })
            }
        }
    }
    Ok(lines)
}

/// Indexes that have a completed record in the log.
pub fn completed_indexes(lines: &[LogLine]) -> BTreeSet<usize> {
    lines
        .iter()
        .filter_map(|l| match l {
            LogLine::PointEnd { index, .. } => Some(*index),
            _ => None,
        })
        .collect()
}

/// A full offline recomputation of a log's records, next to what the capture
/// run wrote, in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub header: Header,
    pub recomputed: Vec<SweepRecord>,
    pub logged: Vec<SweepRecord>,
}

/// Recompute every completed point from raw log data. A repeated point start
/// supersedes earlier data for that index (an interrupted point redone on
/// resume), matching exactly what the capture run analyzed.
pub fn replay_log(lines: &[LogLine]) -> Result<Replay, OrchestratorError> {
    let header = match lines.first() {
        Some(LogLine::Header(h)) => h.clone(),
        _ => {
            return Err(OrchestratorError::LogFormat {
                line: 1,
                detail: "expected a header line".into(),
            })
        }
    };
    if header.schema_version != SCHEMA_VERSION {
        return Err(OrchestratorError::LogFormat {
            line: 1,
            detail: format!(
                "schema version {} is unsupported, expected {}",
                header.schema_version, SCHEMA_VERSION
            ),
        });
    }

    let mut points: BTreeMap<usize, OperatingPoint> = BTreeMap::new();
    let mut events: BTreeMap<usize, Vec<ShareEvent>> = BTreeMap::new();
    let mut telemetry: BTreeMap<usize, Vec<Telemetry>> = BTreeMap::new();
    let mut recomputed = Vec::new();
    let mut logged = Vec::new();

    for (i, line) in lines.iter().enumerate().skip(1) {
        let lineno = i + 1;
        match line {
            LogLine::Header(_) => {
                return Err(OrchestratorError::LogFormat {
                    line: lineno,
                    detail: "unexpected second header".into(),
                })
            }
            LogLine::PointStart { index, point, .. } => {
                points.insert(*index, *point);
                events.insert(*index, Vec::new());
                telemetry.insert(*index, Vec::new());
            }
            LogLine::Share { index, event } => {
                events
                    .get_mut(index)
                    .ok_or_else(|| OrchestratorError::LogFormat {
                        line: lineno,
                        detail: format!("share for point {index} before its start"),
                    })?
                    .push(event.clone());
            }
            LogLine::Telemetry { index, sample } => {
                telemetry
                    .get_mut(index)
                    .ok_or_else(|| OrchestratorError::LogFormat {
                        line: lineno,
                        detail: format!("telemetry for point {index} before its start"),
                    })?
                    .push(*sample);
            }
            LogLine::Alarm { .. } => {}
            LogLine::PointEnd { index, record } => {
                let point = points.get(index).copied().ok_or_else(|| {
                    OrchestratorError::LogFormat {
                        line: lineno,
                        detail: format!("end of point {index} that never started"),
                    }
                })?;
                let evs = events.get(index).map(Vec::as_slice).unwrap_or_default();
                let tel = telemetry.get(index).map(Vec::as_slice).unwrap_or_default();
                recomputed.push(summarize_point(*index, point, evs, tel, &header.analysis)?);
                logged.push(record.clone());
            }
        }
    }
    Ok(Replay { header, recomputed, logged })
}

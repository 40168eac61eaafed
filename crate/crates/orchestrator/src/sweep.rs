//! Sweep execution: walk a plan against a live endpoint, logging raw shares
//! and telemetry as they arrive and a summary record per completed point.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use ghost::{DeviceClient, DeviceEndpoint, GhostError};
use sentinel::{detect_anomalies, Limits};
use substrate::{OperatingPoint, ShareEvent, Telemetry};
use tokio::time::{interval, sleep_until, Instant, MissedTickBehavior};

use crate::log::{read_log, Header, LogLine, LogWriter, SCHEMA_VERSION};
use crate::plan::SweepPlan;
use crate::record::{summarize_point, AnalysisSettings, SweepRecord};
use crate::OrchestratorError;

fn unix_now_s() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// Execute `plan` against the device at `endpoint`, appending raw data and
/// per-point records to a JSONL log at `log_path`.
///
/// The plan is validated against `limits` before anything touches the wire.
/// `plan.time_scale` compresses wall-clock dwell and polling only when the
/// device reports a simulated model; real hardware always runs at wall pace.
/// If the log already holds an earlier run of the same plan, completed
/// points are returned as logged and only the rest are (re)collected; an
/// interrupted point is redone from scratch. A critical alarm cuts the
/// current point short but the sweep moves on. Endpoint loss returns an
/// error with all completed work already persisted.
pub async fn run_sweep(
    plan: &SweepPlan,
    endpoint: &DeviceEndpoint,
    limits: &Limits,
    log_path: &Path,
) -> Result<Vec<SweepRecord>, OrchestratorError> {
    plan.validate(limits)?;
    let client = DeviceClient::new(endpoint.clone())?;
    let info = client.fetch_info().await?;
    let effective_scale =
        if ghost::is_simulated_model(&info.asic_model) { plan.time_scale } else { 1.0 };

    // Resume bookkeeping. The header's analysis settings always win so a
    // resumed run analyzes exactly like the original one.
    let existing = if log_path.exists() { read_log(log_path)? } else { Vec::new() };
    let fresh = existing.is_empty();
    let (header, mut records) = if fresh {
        let header = Header {
            schema_version: SCHEMA_VERSION,
            plan: plan.clone(),
            // Telemetry timestamps are device-clock seconds, and consecutive
            // polls land poll_interval_s apart on that clock whatever the
            // acceleration, so the gap rule is keyed to the unscaled cadence.
            analysis: AnalysisSettings::for_cadence(endpoint.poll_interval_s),
            device_model: info.asic_model.clone(),
            started_unix_s: unix_now_s(),
        };
        (header, BTreeMap::new())
    } else {
        let header = match &existing[0] {
            LogLine::Header(h) => h.clone(),
            _ => {
                return Err(OrchestratorError::LogFormat {
                    line: 1,
                    detail: "expected a header line".into(),
                })
            }
        };
        if header.plan != *plan {
            return Err(OrchestratorError::PlanMismatch);
        }
        let mut records = BTreeMap::new();
        for line in &existing {
            if let LogLine::PointEnd { index, record } = line {
                records.insert(*index, record.clone());
            }
        }
        (header, records)
    };

    let mut log = LogWriter::append(log_path)?;
    if fresh {
        log.write_line(&LogLine::Header(header.clone()))?;
    }

    let dwell_wall_s = plan.dwell_s / effective_scale;
    let poll_wall_s = endpoint.poll_interval_s / effective_scale;
    for (index, point) in plan.points.iter().enumerate() {
        if records.contains_key(&index) {
            continue;
        }
        let record =
            run_point(&client, &header.analysis, index, *point, dwell_wall_s, poll_wall_s, &mut log)
                .await?;
        records.insert(index, record);
    }
    Ok(records.into_values().collect())
}

/// One point: command it, then capture shares and telemetry concurrently
/// until the dwell ends or a critical alarm fires, then summarize.
async fn run_point(
    client: &DeviceClient,
    analysis: &AnalysisSettings,
    index: usize,
    point: OperatingPoint,
    dwell_wall_s: f64,
    poll_wall_s: f64,
    log: &mut LogWriter,
) -> Result<SweepRecord, OrchestratorError> {
    client.set_operating_point(point).await?;
    log.write_line(&LogLine::PointStart { index, point, t_wall_s: unix_now_s() })?;

    let mut shares = client.subscribe_shares().await?;
    let mut events: Vec<ShareEvent> = Vec::new();
    let mut history: Vec<Telemetry> = Vec::new();

    let deadline = Instant::now() + Duration::from_secs_f64(dwell_wall_s);
    let mut poll = interval(Duration::from_secs_f64(poll_wall_s));
    poll.set_missed_tick_behavior(MissedTickBehavior::Delay);

    loop {
        tokio::select! {
            _ = sleep_until(deadline) => break,
            _ = poll.tick() => {
                let sample = client.poll_telemetry().await?;
                log.write_line(&LogLine::Telemetry { index, sample })?;
                history.push(sample);
                // Check only the newest pair; older samples were checked on
                // arrival. A critical finding ends the point, not the sweep.
                let tail = &history[history.len().saturating_sub(2)..];
                if let Some(alarm) =
                    detect_anomalies(tail, &analysis.anomaly).into_iter().find(|a| a.is_critical())
                {
                    log.write_line(&LogLine::Alarm { index, alarm })?;
                    break;
                }
            }
            next = shares.next() => match next {
                Some(Ok(share)) => {
                    log.write_line(&LogLine::Share { index, event: share.event.clone() })?;
                    events.push(share.event);
                }
                Some(Err(e)) => return Err(e.into()),
                None => {
                    return Err(OrchestratorError::Device(GhostError::Transport(
                        "share stream ended mid-dwell".into(),
                    )))
                }
            },
        }
    }

    let record = summarize_point(index, point, &events, &history, analysis)?;
    log.write_line(&LogLine::PointEnd { index, record: record.clone() })?;
    Ok(record)
}

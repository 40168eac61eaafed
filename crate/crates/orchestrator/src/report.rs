//! Report export: a fixed-width table for reading and CSV for downstream
//! tools. Rendering is deterministic, so fixed input gives fixed bytes.

use std::fmt::Write as _;

use crate::record::SweepRecord;
use crate::OrchestratorError;

/// Rendered sweep results.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: String,
    pub csv: String,
}

/// CSV column order; floats print in shortest round-trip form, absent
/// optionals print as empty fields.
pub const CSV_HEADER: &str = "index,frequency_mhz,core_mv,regime,event_count,low_confidence,\
cv,entropy_density_nats,entropy_shannon_nats,peak_freq_hz,peak_prominence_db,\
heartbeat_freq_hz,heartbeat_significance_db,mean_temp_c,max_temp_c,mean_power_w,\
mean_hashrate_ghs,alarm_count";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_fixed(v: Option<f64>, decimals: usize) -> String {
    v.map(|x| format!("{x:.decimals$}")).unwrap_or_else(|| "-".into())
}

/// Render records into a human table and a CSV dump.
pub fn export_report(records: &[SweepRecord]) -> Result<Report, OrchestratorError> {
    if records.is_empty() {
        return Err(OrchestratorError::NoRecords);
    }

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in records {
        let timing = r.timing.as_ref();
        let peak = r.spectral.as_ref().and_then(|s| s.peak);
        let heartbeat = r.spectral.as_ref().and_then(|s| s.heartbeat);
        let fields = [
            r.index.to_string(),
            r.point.frequency_mhz.to_string(),
            r.point.core_mv.to_string(),
            r.regime.to_string(),
            r.event_count.to_string(),
            r.low_confidence.to_string(),
            opt(timing.map(|t| t.cv)),
            opt(timing.map(|t| t.entropy_density)),
            opt(timing.map(|t| t.entropy_shannon)),
            opt(peak.map(|p| p.freq_hz)),
            opt(peak.map(|p| p.prominence_db)),
            opt(heartbeat.map(|h| h.freq_hz)),
            opt(heartbeat.map(|h| h.significance_db)),
            opt(Some(r.telemetry.mean_temp_c)),
            opt(Some(r.telemetry.max_temp_c)),
            opt(Some(r.telemetry.mean_power_w)),
            opt(Some(r.telemetry.mean_hashrate_ghs)),
            r.alarms.len().to_string(),
        ];
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }

    let mut table = String::new();
    writeln!(
        table,
        "{:>3}  {:>5}  {:>5}  {:>7}  {:>9}  {:>9}  {:>8}  {:>7}  regime",
        "idx", "mV", "MHz", "events", "cv", "entropy", "peak Hz", "HB dB"
    )
    .expect("writing to a String cannot fail");
    for r in records {
        let timing = r.timing.as_ref();
        let peak = r.spectral.as_ref().and_then(|s| s.peak);
        let heartbeat = r.spectral.as_ref().and_then(|s| s.heartbeat);
        let mut flags = String::new();
        if r.low_confidence {
            flags.push_str(" [low-confidence]");
        }
        if !r.alarms.is_empty() {
            let _ = write!(flags, " [alarms: {}]", r.alarms.len());
        }
        writeln!(
            table,
            "{:>3}  {:>5}  {:>5}  {:>7}  {:>9}  {:>9}  {:>8}  {:>7}  {}{}",
            r.index,
            r.point.core_mv,
            r.point.frequency_mhz,
            r.event_count,
            opt_fixed(timing.map(|t| t.cv), 4),
            opt_fixed(timing.map(|t| t.entropy_density), 4),
            opt_fixed(peak.map(|p| p.freq_hz), 3),
            opt_fixed(heartbeat.map(|h| h.significance_db), 1),
            r.regime,
            flags
        )
        .expect("writing to a String cannot fail");
    }

    Ok(Report { table, csv })
}

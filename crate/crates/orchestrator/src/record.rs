//! Per-point analysis: turn a point's captured shares and telemetry into a
//! compact record. Capture and replay share this code path, which is what
//! makes records recomputable from the raw log.

use muse::{
    detect_heartbeat, interarrival_stats, psd_estimate, rate_series, HeartbeatBand,
    HeartbeatDetection, MuseError, SpectralPeak, TimingStats, WelchConfig,
};
use sentinel::{classify_regime, detect_anomalies, Alarm, AnomalyRules, Regime};
use serde::{Deserialize, Serialize};
use substrate::{OperatingPoint, ShareEvent, Telemetry};

use crate::OrchestratorError;

/// Analysis knobs, frozen into the log header so replay sees exactly what
/// capture saw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSettings {
    /// Rate-series bin width, seconds of device time.
    pub bin_s: f64,
    pub welch: WelchConfig,
    pub band: HeartbeatBand,
    /// Decibels over the out-of-band median a peak needs to count.
    pub min_prominence_db: f64,
    /// Points with fewer events than this are flagged low-confidence.
    pub low_confidence_floor: usize,
    pub anomaly: AnomalyRules,
}

impl Default for AnalysisSettings {
    fn default() -> Self {
        AnalysisSettings {
            bin_s: muse::DEFAULT_BIN_S,
            welch: WelchConfig::default(),
            band: HeartbeatBand::default(),
            min_prominence_db: muse::spectral::DEFAULT_THRESHOLD_DB,
            low_confidence_floor: 1000,
            anomaly: AnomalyRules::default(),
        }
    }
}

impl AnalysisSettings {
    /// Defaults with the telemetry gap rule tuned to the actual wall-clock
    /// polling cadence, which shrinks under simulated acceleration.
    pub fn for_cadence(poll_interval_s: f64) -> Self {
        let mut settings = AnalysisSettings::default();
        settings.anomaly.poll_interval_s = poll_interval_s;
        settings
    }
}

/// Compact spectral result for one point: method resolution plus the global
/// peak and any in-band detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub df_hz: f64,
    pub segments: usize,
    pub peak: Option<SpectralPeak>,
    pub heartbeat: Option<HeartbeatDetection>,
}

/// Aggregates over a point's telemetry history; all zero when nothing
/// arrived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TelemetrySummary {
    pub samples: usize,
    pub mean_temp_c: f64,
    pub max_temp_c: f64,
    pub mean_power_w: f64,
    pub mean_hashrate_ghs: f64,
    pub mean_core_mv: f64,
}

/// Everything a sweep keeps per operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: usize,
    pub point: OperatingPoint,
    pub regime: Regime,
    pub event_count: usize,
    /// Too few events for trustworthy timing statistics.
    pub low_confidence: bool,
    /// Absent when fewer than 11 events arrived.
    pub timing: Option<TimingStats>,
    /// Absent when the point was too short for a spectral estimate.
    pub spectral: Option<SpectralSummary>,
    pub telemetry: TelemetrySummary,
    pub alarms: Vec<Alarm>,
}

/// Pure per-point analysis over raw captures. Event order does not matter;
/// timestamps are sorted before timing statistics.
pub fn summarize_point(
    index: usize,
    point: OperatingPoint,
    events: &[ShareEvent],
    telemetry: &[Telemetry],
    settings: &AnalysisSettings,
) -> Result<SweepRecord, OrchestratorError> {
    let mut times: Vec<f64> = events.iter().map(|e| e.t).collect();
    times.sort_by(|a, b| a.partial_cmp(b).expect("share timestamps are finite"));

    let timing = if times.len() >= muse::timing::MIN_WINDOW {
        Some(
            interarrival_stats(&times, times.len())
                .map_err(|e| OrchestratorError::Analysis(e.to_string()))?,
        )
    } else {
        None
    };

    let series = rate_series(events, settings.bin_s)
        .map_err(|e| OrchestratorError::Analysis(e.to_string()))?;
    let spectral = match psd_estimate(&series, &settings.welch) {
        Ok(est) => {
            let heartbeat = detect_heartbeat(&est, settings.band, settings.min_prominence_db);
            Some(SpectralSummary {
                df_hz: est.df_hz,
                segments: est.segments,
                peak: est.peak,
                heartbeat,
            })
        }
        Err(MuseError::SeriesTooShort { .. }) => None,
        Err(e) => return Err(OrchestratorError::Analysis(e.to_string())),
    };

    Ok(SweepRecord {
        index,
        point,
        regime: classify_regime(point.core_mv as f64),
        event_count: events.len(),
        low_confidence: events.len() < settings.low_confidence_floor,
        timing,
        spectral,
        telemetry: summarize_telemetry(telemetry),
        alarms: detect_anomalies(telemetry, &settings.anomaly),
    })
}

fn summarize_telemetry(history: &[Telemetry]) -> TelemetrySummary {
    if history.is_empty() {
        return TelemetrySummary {
            samples: 0,
            mean_temp_c: 0.0,
            max_temp_c: 0.0,
            mean_power_w: 0.0,
            mean_hashrate_ghs: 0.0,
            mean_core_mv: 0.0,
        };
    }
    let n = history.len() as f64;
    TelemetrySummary {
        samples: history.len(),
        mean_temp_c: history.iter().map(|s| s.temp_c).sum::<f64>() / n,
        max_temp_c: history.iter().map(|s| s.temp_c).fold(f64::NEG_INFINITY, f64::max),
        mean_power_w: history.iter().map(|s| s.power_w).sum::<f64>() / n,
        mean_hashrate_ghs: history.iter().map(|s| s.hashrate_ghs).sum::<f64>() / n,
        mean_core_mv: history.iter().map(|s| s.core_mv_actual).sum::<f64>() / n,
    }
}

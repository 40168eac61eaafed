use serde::{Deserialize, Serialize};
use substrate::Telemetry;

/// Thresholds for telemetry screening. Slope is measured per sample, the gap
/// rule against the expected polling cadence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnomalyRules {
    pub max_temp_c: f64,
    pub max_temp_slope_c_per_sample: f64,
    /// Fractional hashrate drop between consecutive samples that trips an
    /// alarm.
    pub max_hashrate_drop_frac: f64,
    pub poll_interval_s: f64,
}

impl Default for AnomalyRules {
    fn default() -> Self {
        AnomalyRules {
            max_temp_c: 90.0,
            max_temp_slope_c_per_sample: 2.0,
            max_hashrate_drop_frac: 0.5,
            poll_interval_s: 3.0,
        }
    }
}

/// A telemetry finding, stamped with the sample time that triggered it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Alarm {
    OverTemp { t: f64, temp_c: f64, max_c: f64 },
    TempSlope { t: f64, slope_c_per_sample: f64, max_c_per_sample: f64 },
    HashrateDrop { t: f64, from_ghs: f64, to_ghs: f64, fraction: f64 },
    TelemetryGap { t: f64, gap_s: f64, max_gap_s: f64 },
}

impl Alarm {
    /// Only overtemperature warrants aborting a run outright.
    pub fn is_critical(&self) -> bool {
        matches!(self, Alarm::OverTemp { .. })
    }

    /// Sample time the alarm fired at.
    pub fn t(&self) -> f64 {
        match self {
            Alarm::OverTemp { t, .. }
            | Alarm::TempSlope { t, .. }
            | Alarm::HashrateDrop { t, .. }
            | Alarm::TelemetryGap { t, .. } => *t,
        }
    }
}

impl std::fmt::Display for Alarm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Alarm::OverTemp { t, temp_c, max_c } => {
                write!(f, "t={t:.1}s over-temp: {temp_c:.1} C exceeds {max_c:.1} C")
            }
            Alarm::TempSlope { t, slope_c_per_sample, max_c_per_sample } => write!(
                f,
                "t={t:.1}s temp slope: {slope_c_per_sample:.2} C/sample exceeds {max_c_per_sample:.2}"
            ),
            Alarm::HashrateDrop { t, from_ghs, to_ghs, fraction } => write!(
                f,
                "t={t:.1}s hashrate drop: {from_ghs:.1} -> {to_ghs:.1} GH/s ({:.0}%)",
                fraction * 100.0
            ),
            Alarm::TelemetryGap { t, gap_s, max_gap_s } => {
                write!(f, "t={t:.1}s telemetry gap: {gap_s:.1} s exceeds {max_gap_s:.1} s")
            }
        }
    }
}

/// Screen a telemetry history in sample order. Single-sample rules fire on
/// every offending sample; rate rules need at least two samples.
pub fn detect_anomalies(history: &[Telemetry], rules: &AnomalyRules) -> Vec<Alarm> {
    let mut alarms = Vec::new();
    let max_gap = 3.0 * rules.poll_interval_s;
    for (i, sample) in history.iter().enumerate() {
        if sample.temp_c > rules.max_temp_c {
            alarms.push(Alarm::OverTemp {
                t: sample.t,
                temp_c: sample.temp_c,
                max_c: rules.max_temp_c,
            });
        }
        if i == 0 {
            continue;
        }
        let prev = &history[i - 1];
        let slope = sample.temp_c - prev.temp_c;
        if slope > rules.max_temp_slope_c_per_sample {
            alarms.push(Alarm::TempSlope {
                t: sample.t,
                slope_c_per_sample: slope,
                max_c_per_sample: rules.max_temp_slope_c_per_sample,
            });
        }
        if prev.hashrate_ghs > 0.0 {
            let fraction = (prev.hashrate_ghs - sample.hashrate_ghs) / prev.hashrate_ghs;
            if fraction > rules.max_hashrate_drop_frac {
                alarms.push(Alarm::HashrateDrop {
                    t: sample.t,
                    from_ghs: prev.hashrate_ghs,
                    to_ghs: sample.hashrate_ghs,
                    fraction,
                });
            }
        }
        let gap = sample.t - prev.t;
        if gap > max_gap {
            alarms.push(Alarm::TelemetryGap { t: sample.t, gap_s: gap, max_gap_s: max_gap });
        }
    }
    alarms
}

//! Sweep plans: which operating points to visit, in what order, and for how
//! long. Plans are validated in full before anything touches the wire.

use serde::{Deserialize, Serialize};
use sentinel::{enforce_limits, Limits};
use substrate::OperatingPoint;

use crate::OrchestratorError;

/// Which coordinate a plan varies; the other one stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Voltage,
    Frequency,
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepAxis::Voltage => "voltage",
            SweepAxis::Frequency => "frequency",
        })
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = OrchestratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "voltage" => Ok(SweepAxis::Voltage),
            "frequency" => Ok(SweepAxis::Frequency),
            other => Err(OrchestratorError::BadPlan(format!(
                "axis must be voltage or frequency, got {other:?}"
            ))),
        }
    }
}

/// An ordered visit list with a common dwell. `time_scale` is honored only
/// against simulated devices; real hardware always dwells in wall time.
/// Point order is preserved and recorded, so directional effects stay
/// distinguishable across runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub axis: SweepAxis,
    pub points: Vec<OperatingPoint>,
    /// Device-time dwell per point, seconds.
    pub dwell_s: f64,
    /// Simulated seconds per wall second; must match the mock's configured
    /// acceleration for the dwell to span `dwell_s` of device time.
    pub time_scale: f64,
    /// Recorded for provenance; keys resume compatibility checks.
    pub seed: u64,
}

impl SweepPlan {
    /// Full structural check: nonempty, positive dwell and scale, every point
    /// valid and inside the envelope, off-axis coordinate fixed.
    pub fn validate(&self, limits: &Limits) -> Result<(), OrchestratorError> {
        if self.points.is_empty() {
            return Err(OrchestratorError::BadPlan("plan has no points".into()));
        }
        if !self.dwell_s.is_finite() || !(self.dwell_s > 0.0) {
            return Err(OrchestratorError::BadPlan(format!(
                "dwell must be positive, got {}",
                self.dwell_s
            )));
        }
        if !self.time_scale.is_finite() || !(self.time_scale > 0.0) {
            return Err(OrchestratorError::BadPlan(format!(
                "time_scale must be positive, got {}",
                self.time_scale
            )));
        }
        for (i, p) in self.points.iter().enumerate() {
            p.validate()
                .map_err(|e| OrchestratorError::BadPlan(format!("point {i}: {e}")))?;
            enforce_limits(p, limits)
                .map_err(|e| OrchestratorError::BadPlan(format!("point {i}: {e}")))?;
        }
        let first = self.points[0];
        for (i, p) in self.points.iter().enumerate() {
            match self.axis {
                SweepAxis::Voltage if p.frequency_mhz != first.frequency_mhz => {
                    return Err(OrchestratorError::BadPlan(format!(
                        "voltage sweep must hold frequency fixed; point {i} is {} MHz, point 0 is {} MHz",
                        p.frequency_mhz, first.frequency_mhz
                    )));
                }
                SweepAxis::Frequency if p.core_mv != first.core_mv => {
                    return Err(OrchestratorError::BadPlan(format!(
                        "frequency sweep must hold voltage fixed; point {i} is {} mV, point 0 is {} mV",
                        p.core_mv, first.core_mv
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Descending voltage walk 990 to 850 mV in 10 mV steps at 400 MHz,
/// 60 seconds per point.
pub fn default_voltage_plan() -> SweepPlan {
    let points = (0..15)
        .map(|i| OperatingPoint::new(400, 990 - 10 * i))
        .collect();
    SweepPlan { axis: SweepAxis::Voltage, points, dwell_s: 60.0, time_scale: 1.0, seed: 0 }
}

/// Ascending frequency walk 300 to 500 MHz in 20 MHz steps at 900 mV,
/// 40 seconds per point.
pub fn default_frequency_plan() -> SweepPlan {
    let points = (0..11)
        .map(|i| OperatingPoint::new(300 + 20 * i, 900))
        .collect();
    SweepPlan { axis: SweepAxis::Frequency, points, dwell_s: 40.0, time_scale: 1.0, seed: 0 }
}

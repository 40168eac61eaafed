use serde::{Deserialize, Serialize};
use substrate::OperatingPoint;

/// Operating envelope the device is allowed to run in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    pub volt_mv: (u32, u32),
    pub freq_mhz: (u32, u32),
    pub max_temp_c: f64,
    pub max_power_w: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { volt_mv: (850, 990), freq_mhz: (300, 500), max_temp_c: 90.0, max_power_w: 18.0 }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<(), String> {
        if self.volt_mv.0 >= self.volt_mv.1 {
            return Err(format!("voltage bounds must be ordered, got {:?}", self.volt_mv));
        }
        if self.freq_mhz.0 >= self.freq_mhz.1 {
            return Err(format!("frequency bounds must be ordered, got {:?}", self.freq_mhz));
        }
        if !(self.max_temp_c > 0.0) {
            return Err(format!("max temp must be positive, got {}", self.max_temp_c));
        }
        if !(self.max_power_w > 0.0) {
            return Err(format!("max power must be positive, got {}", self.max_power_w));
        }
        Ok(())
    }
}

/// Why an operating point was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum LimitViolation {
    #[error("core voltage {requested} mV is below the {floor} mV floor")]
    VoltageBelowFloor { requested: u32, floor: u32 },
    #[error("core voltage {requested} mV is above the {ceiling} mV ceiling")]
    VoltageAboveCeiling { requested: u32, ceiling: u32 },
    #[error("frequency {requested} MHz is below the {floor} MHz floor")]
    FrequencyBelowFloor { requested: u32, floor: u32 },
    #[error("frequency {requested} MHz is above the {ceiling} MHz ceiling")]
    FrequencyAboveCeiling { requested: u32, ceiling: u32 },
}

/// Accept or reject a requested operating point; never mutates the request.
pub fn enforce_limits(op: &OperatingPoint, l: &Limits) -> Result<(), LimitViolation> {
    if op.core_mv < l.volt_mv.0 {
        return Err(LimitViolation::VoltageBelowFloor { requested: op.core_mv, floor: l.volt_mv.0 });
    }
    if op.core_mv > l.volt_mv.1 {
        return Err(LimitViolation::VoltageAboveCeiling {
            requested: op.core_mv,
            ceiling: l.volt_mv.1,
        });
    }
    if op.frequency_mhz < l.freq_mhz.0 {
        return Err(LimitViolation::FrequencyBelowFloor {
            requested: op.frequency_mhz,
            floor: l.freq_mhz.0,
        });
    }
    if op.frequency_mhz > l.freq_mhz.1 {
        return Err(LimitViolation::FrequencyAboveCeiling {
            requested: op.frequency_mhz,
            ceiling: l.freq_mhz.1,
        });
    }
    Ok(())
}

use serde::{Deserialize, Serialize};

use crate::hash::Hash256;

/// Injected rate modulation: a sinusoid at `freq_hz` with relative `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Heartbeat {
    pub freq_hz: f64,
    /// Relative modulation depth in [0, 1]; 0 disables the tone.
    pub depth: f64,
}

impl Default for Heartbeat {
    fn default() -> Self {
        Heartbeat { freq_hz: 2.4, depth: 0.0 }
    }
}

/// Instantaneous simulator state. Copyable snapshot; the device owns the clock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubstrateState {
    /// Order parameter, dimensionless.
    pub psi: f64,
    /// Junction temperature, clamped to the sensor range [0, 120].
    pub temp_c: f64,
    /// Mean share rate in events/s, must be positive.
    pub base_rate: f64,
    pub clock_mhz: f64,
    pub core_mv: f64,
    pub heartbeat: Option<Heartbeat>,
}

impl SubstrateState {
    pub fn heartbeat(&self) -> Heartbeat {
        self.heartbeat.unwrap_or_default()
    }
}

impl Default for SubstrateState {
    fn default() -> Self {
        SubstrateState {
            psi: 0.0,
            temp_c: 25.0,
            base_rate: 50.0,
            clock_mhz: 400.0,
            core_mv: 900.0,
            heartbeat: None,
        }
    }
}

/// One accepted share observed at the device tap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareEvent {
    /// Seconds on the device clock; strictly increasing per source.
    pub t: f64,
    pub hash: Hash256,
    pub nonce: u32,
    /// Reserved; the simulator only emits valid shares.
    pub valid: bool,
    pub source: String,
}

/// Commanded PLL frequency and core voltage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub frequency_mhz: u32,
    pub core_mv: u32,
}

impl OperatingPoint {
    pub const FREQ_MHZ: (u32, u32) = (300, 500);
    pub const FREQ_STEP_MHZ: u32 = 20;
    pub const VOLT_MV: (u32, u32) = (850, 990);

    pub fn new(frequency_mhz: u32, core_mv: u32) -> Self {
        OperatingPoint { frequency_mhz, core_mv }
    }

    /// Structural validity: frequency on the 20 MHz grid inside [300, 500],
    /// voltage inside [850, 990]. Checked before anything reaches the wire.
    pub fn validate(&self) -> Result<(), OperatingPointError> {
        let (f_lo, f_hi) = Self::FREQ_MHZ;
        if self.frequency_mhz < f_lo || self.frequency_mhz > f_hi {
            return Err(OperatingPointError::FrequencyRange {
                mhz: self.frequency_mhz,
                lo: f_lo,
                hi: f_hi,
            });
        }
        if self.frequency_mhz % Self::FREQ_STEP_MHZ != 0 {
            return Err(OperatingPointError::FrequencyStep {
                mhz: self.frequency_mhz,
                step: Self::FREQ_STEP_MHZ,
            });
        }
        let (v_lo, v_hi) = Self::VOLT_MV;
        if self.core_mv < v_lo || self.core_mv > v_hi {
            return Err(OperatingPointError::VoltageRange { mv: self.core_mv, lo: v_lo, hi: v_hi });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum OperatingPointError {
    #[error("frequency {mhz} MHz outside [{lo}, {hi}]")]
    FrequencyRange { mhz: u32, lo: u32, hi: u32 },
    #[error("frequency {mhz} MHz is not a multiple of {step} MHz")]
    FrequencyStep { mhz: u32, step: u32 },
    #[error("core voltage {mv} mV outside [{lo}, {hi}]")]
    VoltageRange { mv: u32, lo: u32, hi: u32 },
}

/// Sampled device state as seen by the client.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Telemetry {
    /// Receipt time at the client, seconds.
    pub t: f64,
    /// Device-reported clock, seconds since device start.
    pub uptime_s: f64,
    pub core_mv_actual: f64,
    pub frequency_mhz: u32,
    pub temp_c: f64,
    pub power_w: f64,
    pub hashrate_ghs: f64,
}

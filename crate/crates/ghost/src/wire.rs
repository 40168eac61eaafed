//! The HTTP/JSON schema shared verbatim by the client and the mock server.
//! Everything speaking this protocol imports these definitions, so the two
//! sides cannot drift apart.

use serde::{Deserialize, Serialize};
use substrate::Telemetry;

/// GET: full device snapshot.
pub const INFO_PATH: &str = "/api/system/info";
/// PATCH: stage an operating-point change; applied on restart.
pub const SYSTEM_PATH: &str = "/api/system";
/// POST: apply staged settings and power-cycle.
pub const RESTART_PATH: &str = "/api/system/restart";
/// GET: newline-delimited JSON share events, one per line.
pub const SHARES_PATH: &str = "/api/shares/stream";

/// Device snapshot in the firmware's native field spelling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemInfo {
    #[serde(rename = "ASICModel")]
    pub asic_model: String,
    #[serde(rename = "uptimeSeconds")]
    pub uptime_seconds: f64,
    /// Commanded PLL frequency, MHz.
    #[serde(rename = "frequency")]
    pub frequency: u32,
    /// Commanded core voltage, mV.
    #[serde(rename = "coreVoltage")]
    pub core_voltage: u32,
    /// Measured core voltage, mV.
    #[serde(rename = "coreVoltageActual")]
    pub core_voltage_actual: f64,
    #[serde(rename = "temp")]
    pub temp: f64,
    #[serde(rename = "power")]
    pub power: f64,
    #[serde(rename = "hashRate")]
    pub hash_rate: f64,
}

impl SystemInfo {
    /// Field-level sanity for values that must be usable downstream.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.core_voltage_actual > 0.0) {
            return Err(format!("coreVoltageActual must be > 0, got {}", self.core_voltage_actual));
        }
        for (name, v) in [
            ("uptimeSeconds", self.uptime_seconds),
            ("coreVoltageActual", self.core_voltage_actual),
            ("temp", self.temp),
            ("power", self.power),
            ("hashRate", self.hash_rate),
        ] {
            if !v.is_finite() {
                return Err(format!("{name} is not finite: {v}"));
            }
        }
        Ok(())
    }

    /// Converts to the domain telemetry type, stamped with the local receipt
    /// time in seconds.
    pub fn to_telemetry(&self, receipt_t_s: f64) -> Telemetry {
        Telemetry {
            t: receipt_t_s,
            uptime_s: self.uptime_seconds,
            core_mv_actual: self.core_voltage_actual,
            frequency_mhz: self.frequency,
            temp_c: self.temp,
            power_w: self.power,
            hashrate_ghs: self.hash_rate,
        }
    }
}

/// PATCH body, exactly `{"frequency": <MHz>, "volts": <mV>}`. Unknown keys
/// are a protocol error on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchSettings {
    pub frequency: u32,
    pub volts: u32,
}

/// Simulated devices advertise a `-sim` model suffix; acceleration features
/// are gated on it.
pub fn is_simulated_model(asic_model: &str) -> bool {
    asic_model.ends_with("-sim")
}

//! First-order RC thermal plant for the junction temperature.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ThermalParams {
    /// Thermal resistance, degC per W.
    pub r_th_c_per_w: f64,
    /// Time constant, seconds.
    pub tau_th_s: f64,
}

impl Default for ThermalParams {
    fn default() -> Self {
        ThermalParams { r_th_c_per_w: 4.0, tau_th_s: 20.0 }
    }
}

/// Sensor range the reported temperature is clamped to.
pub const TEMP_RANGE_C: (f64, f64) = (0.0, 120.0);

/// One forward-Euler update; relaxes toward ambient + power * R_th.
pub fn step(temp_c: f64, power_w: f64, ambient_c: f64, p: &ThermalParams, dt: f64) -> f64 {
    debug_assert!(dt > 0.0);
    let next = temp_c + dt * ((power_w * p.r_th_c_per_w + ambient_c - temp_c) / p.tau_th_s);
    next.clamp(TEMP_RANGE_C.0, TEMP_RANGE_C.1)
}

pub fn equilibrium(power_w: f64, ambient_c: f64, p: &ThermalParams) -> f64 {
    ambient_c + power_w * p.r_th_c_per_w
}

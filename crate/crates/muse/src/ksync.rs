use serde::{Deserialize, Serialize};

use crate::MuseError;

pub const DEFAULT_CORES: usize = 138;
pub const DEFAULT_SIGMA_J_S: f64 = 1e-5;
pub const DEFAULT_F_CLK_HZ: f64 = 4e8;

/// Inputs to the synchronization order metric. The phase list length is the
/// core count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsyncInput {
    /// Clock jitter standard deviation, seconds.
    pub sigma_j_s: f64,
    pub f_clk_hz: f64,
    /// Per-core phase offsets, radians.
    pub phases_rad: Vec<f64>,
}

impl KsyncInput {
    /// All cores at the given common phase.
    pub fn uniform(cores: usize, phase_rad: f64) -> Self {
        KsyncInput {
            sigma_j_s: DEFAULT_SIGMA_J_S,
            f_clk_hz: DEFAULT_F_CLK_HZ,
            phases_rad: vec![phase_rad; cores],
        }
    }

    pub fn validate(&self) -> Result<(), MuseError> {
        if !(self.sigma_j_s >= 0.0) {
            return Err(MuseError::BadConfig(format!("sigma_j must be >= 0, got {}", self.sigma_j_s)));
        }
        if !(self.f_clk_hz > 0.0) {
            return Err(MuseError::BadConfig(format!("f_clk must be > 0, got {}", self.f_clk_hz)));
        }
        if self.phases_rad.is_empty() {
            return Err(MuseError::BadConfig("phase list is empty".into()));
        }
        Ok(())
    }
}

/// exp(-sigma_j^2 * f_clk / (2 pi)) * sum_k cos(phase_k), unnormalized.
/// The exponent is used literally in SI units even though sigma^2 * f carries
/// units of seconds; that oddity is part of the formula being reproduced.
pub fn compute_ksync(k: &KsyncInput) -> f64 {
    let attenuation = (-(k.sigma_j_s * k.sigma_j_s * k.f_clk_hz) / std::f64::consts::TAU).exp();
    attenuation * k.phases_rad.iter().map(|p| p.cos()).sum::<f64>()
}

/// Per-core average of the metric (plain division by core count; a
/// convenience, not part of the source formula).
pub fn compute_ksync_normalized(k: &KsyncInput) -> f64 {
    compute_ksync(k) / k.phases_rad.len() as f64
}

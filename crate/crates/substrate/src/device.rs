//! The composed device model: order parameter, share emission, thermals, and
//! an operating point, advanced together on one simulated clock.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hash::sha256_digest;
use crate::landau::{self, LandauParams};
use crate::sampling;
use crate::thermal::{self, ThermalParams};
use crate::types::{Heartbeat, OperatingPoint, ShareEvent, SubstrateState};

/// Coupling from the order parameter (and heartbeat) into the share rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RateCoupling {
    pub c_psi: f64,
    /// Rate floor as a fraction of base_rate; keeps the sampler well-defined.
    pub min_rate_frac: f64,
}

impl Default for RateCoupling {
    fn default() -> Self {
        RateCoupling { c_psi: 0.5, min_rate_frac: 0.01 }
    }
}

/// lambda(t) = base_rate * (1 + c_psi * psi^2) * (1 + depth * sin(2 pi f t)),
/// clamped from below at min_rate_frac * base_rate.
pub fn instantaneous_rate(s: &SubstrateState, t_s: f64, c: &RateCoupling) -> f64 {
    let hb = s.heartbeat();
    let modulation = 1.0 + hb.depth * (std::f64::consts::TAU * hb.freq_hz * t_s).sin();
    let rate = s.base_rate * (1.0 + c.c_psi * s.psi * s.psi) * modulation;
    rate.max(c.min_rate_frac * s.base_rate)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SubstrateConfig {
    pub initial: SubstrateState,
    pub landau: LandauParams,
    pub thermal: ThermalParams,
    pub coupling: RateCoupling,
    pub ambient_c: f64,
    /// When set, the injected heartbeat is active only while core_mv is
    /// strictly below this threshold, modeling a tone that appears at the
    /// edge of voltage stability.
    pub heartbeat_gate_below_mv: Option<f64>,
    /// Saturation bound on |psi|; makes the thinning envelope exact.
    pub psi_max: f64,
    /// Integration step for the order parameter and thermal plant, seconds.
    pub dt_s: f64,
    pub device_id: String,
    pub seed: u64,
    /// Leakage/idle draw, W.
    pub static_power_w: f64,
    /// Dynamic draw at 400 MHz / 900 mV, W; scales as f * V^2.
    pub dynamic_power_w: f64,
    pub ghs_per_mhz: f64,
}

impl Default for SubstrateConfig {
    fn default() -> Self {
        SubstrateConfig {
            initial: SubstrateState::default(),
            landau: LandauParams::default(),
            thermal: ThermalParams::default(),
            coupling: RateCoupling::default(),
            ambient_c: 25.0,
            heartbeat_gate_below_mv: None,
            psi_max: 2.0,
            dt_s: 1e-3,
            device_id: "sim0".into(),
            seed: 7,
            static_power_w: 2.0,
            dynamic_power_w: 8.0,
            ghs_per_mhz: 1.2,
        }
    }
}

impl SubstrateConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.landau.validate().map_err(ConfigError::Landau)?;
        if !(self.initial.base_rate > 0.0) {
            return Err(ConfigError::Invalid("base_rate must be positive"));
        }
        if let Some(hb) = self.initial.heartbeat {
            if !(0.0..=1.0).contains(&hb.depth) || !(hb.freq_hz > 0.0) {
                return Err(ConfigError::Invalid("heartbeat needs depth in [0,1], freq > 0"));
            }
        }
        if let Some(gate) = self.heartbeat_gate_below_mv {
            if !gate.is_finite() {
                return Err(ConfigError::Invalid("heartbeat_gate_below_mv must be finite"));
            }
        }
        if !(self.psi_max > 0.0) {
            return Err(ConfigError::Invalid("psi_max must be positive"));
        }
        if !(self.dt_s > 0.0) {
            return Err(ConfigError::Invalid("dt_s must be positive"));
        }
        if !(self.coupling.c_psi >= 0.0) {
            return Err(ConfigError::Invalid("c_psi must be nonnegative"));
        }
        if !(self.coupling.min_rate_frac > 0.0 && self.coupling.min_rate_frac <= 1.0) {
            return Err(ConfigError::Invalid("min_rate_frac must be in (0, 1]"));
        }
        if self.device_id.is_empty() {
            return Err(ConfigError::Invalid("device_id must be nonempty"));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("landau params: {0}")]
    Landau(landau::LandauParamError),
    #[error("{0}")]
    Invalid(&'static str),
}

pub struct Substrate {
    cfg: SubstrateConfig,
    state: SubstrateState,
    t_s: f64,
    rng: ChaCha8Rng,
    nonce: u32,
}

impl Substrate {
    pub fn new(cfg: SubstrateConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let state = cfg.initial;
        Ok(Substrate { cfg, state, t_s: 0.0, rng, nonce: 0 })
    }

    pub fn state(&self) -> &SubstrateState {
        &self.state
    }

    pub fn config(&self) -> &SubstrateConfig {
        &self.cfg
    }

    /// Device clock, seconds since construction.
    pub fn clock_s(&self) -> f64 {
        self.t_s
    }

    pub fn device_id(&self) -> &str {
        &self.cfg.device_id
    }

    pub fn set_operating_point(&mut self, op: OperatingPoint) {
        self.state.clock_mhz = op.frequency_mhz as f64;
        self.state.core_mv = op.core_mv as f64;
    }

    pub fn operating_point(&self) -> OperatingPoint {
        OperatingPoint::new(self.state.clock_mhz as u32, self.state.core_mv as u32)
    }

    pub fn set_heartbeat(&mut self, hb: Option<Heartbeat>) {
        self.state.heartbeat = hb;
    }

    /// Power cycle: the order parameter reforms from the symmetric state.
    pub fn reset_order_parameter(&mut self) {
        self.state.psi = 0.0;
    }

    pub fn power_w(&self) -> f64 {
        let f = self.state.clock_mhz / 400.0;
        let v = self.state.core_mv / 900.0;
        self.cfg.static_power_w + self.cfg.dynamic_power_w * f * v * v
    }

    pub fn hashrate_ghs(&self) -> f64 {
        self.cfg.ghs_per_mhz * self.state.clock_mhz
    }

    /// Whether the configured heartbeat currently applies: always, unless a
    /// voltage gate is set and the core sits at or above it.
    pub fn heartbeat_active(&self) -> bool {
        match self.cfg.heartbeat_gate_below_mv {
            Some(gate) => self.state.core_mv < gate,
            None => true,
        }
    }

    pub fn rate_at(&self, t_s: f64) -> f64 {
        let mut s = self.state;
        if !self.heartbeat_active() {
            s.heartbeat = None;
        }
        instantaneous_rate(&s, t_s, &self.cfg.coupling)
    }

    /// Envelope for the thinning sampler; exact because |psi| <= psi_max.
    pub fn lambda_max(&self) -> f64 {
        let depth = if self.heartbeat_active() { self.state.heartbeat().depth } else { 0.0 };
        self.state.base_rate
            * (1.0 + self.cfg.coupling.c_psi * self.cfg.psi_max * self.cfg.psi_max)
            * (1.0 + depth)
    }

    /// Spec-shaped thermal update with an explicit power override.
    pub fn thermal_step(&mut self, power_w: f64, ambient_c: f64, dt: f64) {
        self.state.temp_c = thermal::step(self.state.temp_c, power_w, ambient_c, &self.cfg.thermal, dt);
    }

    /// Advance the device clock by `horizon_s`, integrating psi and temperature
    /// on the dt grid, and return the shares accepted by Ogata thinning.
    /// Candidate times come from an exponential clock at lambda_max; each
    /// candidate is tested against the rate at the current psi.
    pub fn sample_shares(&mut self, horizon_s: f64) -> Vec<ShareEvent> {
        let mut events = Vec::new();
        if !(horizon_s > 0.0) {
            return events;
        }
        let t_end = self.t_s + horizon_s;
        let lam_max = self.lambda_max();
        let mut t_cand = self.t_s + sampling::exponential(&mut self.rng, lam_max);
        while self.t_s < t_end {
            let dt = self.cfg.dt_s.min(t_end - self.t_s);
            let cell_end = self.t_s + dt;
            while t_cand < cell_end {
                let lam = self.rate_at(t_cand);
                if self.rng.random::<f64>() * lam_max <= lam {
                    events.push(self.emit(t_cand));
                }
                t_cand += sampling::exponential(&mut self.rng, lam_max);
            }
            self.state.psi = landau::step_psi(self.state.psi, self.state.core_mv, &self.cfg.landau, dt, &mut self.rng)
                .clamp(-self.cfg.psi_max, self.cfg.psi_max);
            let power = self.power_w();
            self.state.temp_c =
                thermal::step(self.state.temp_c, power, self.cfg.ambient_c, &self.cfg.thermal, dt);
            self.t_s = cell_end;
        }
        events
    }

    fn emit(&mut self, t: f64) -> ShareEvent {
        self.nonce = self.nonce.wrapping_add(1);
        let mut msg = Vec::with_capacity(self.cfg.device_id.len() + 4);
        msg.extend_from_slice(self.cfg.device_id.as_bytes());
        msg.extend_from_slice(&self.nonce.to_be_bytes());
        ShareEvent {
            t,
            hash: sha256_digest(&msg),
            nonce: self.nonce,
            valid: true,
            source: self.cfg.device_id.clone(),
        }
    }
}

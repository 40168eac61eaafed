//! Order-parameter dynamics: quartic free energy in a single scalar psi whose
//! quadratic coefficient changes sign at a critical core voltage. Below the
//! critical voltage the symmetric state destabilizes and psi settles at
//! +/- sqrt(a_slope * (v_crit - v) / (2 b)).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sampling;
use crate::types::SubstrateState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LandauParams {
    /// Reference free energy, arbitrary units. Offsets only; no dynamics.
    pub f0: f64,
    /// Coefficient of (V - v_crit) in the quadratic term, 1/mV.
    pub a_slope: f64,
    /// Quartic coefficient, must be positive.
    pub b: f64,
    /// Gradient stiffness; retained for fidelity, unused in 0-D mode.
    pub gamma: f64,
    /// Critical core voltage, mV.
    pub v_crit_mv: f64,
    /// Stochastic drive amplitude (per sqrt(s)).
    pub noise_sigma: f64,
}

impl Default for LandauParams {
    fn default() -> Self {
        LandauParams {
            f0: 0.0,
            a_slope: 0.01,
            b: 0.2,
            gamma: 0.0,
            v_crit_mv: 870.0,
            noise_sigma: 0.15,
        }
    }
}

impl LandauParams {
    pub fn validate(&self) -> Result<(), LandauParamError> {
        if !(self.b > 0.0) {
            return Err(LandauParamError::NonPositiveB(self.b));
        }
        if !(self.noise_sigma >= 0.0) {
            return Err(LandauParamError::NegativeNoise(self.noise_sigma));
        }
        if !(850.0..=990.0).contains(&self.v_crit_mv) {
            return Err(LandauParamError::VCritRange(self.v_crit_mv));
        }
        Ok(())
    }

    /// Magnitude of the stable equilibrium at the given voltage: zero at or
    /// above v_crit, sqrt(a_slope * (v_crit - v) / (2 b)) below it.
    pub fn equilibrium_psi(&self, core_mv: f64) -> f64 {
        if core_mv >= self.v_crit_mv {
            0.0
        } else {
            (self.a_slope * (self.v_crit_mv - core_mv) / (2.0 * self.b)).sqrt()
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LandauParamError {
    #[error("quartic coefficient b must be positive, got {0}")]
    NonPositiveB(f64),
    #[error("noise_sigma must be nonnegative, got {0}")]
    NegativeNoise(f64),
    #[error("v_crit {0} mV outside [850, 990]")]
    VCritRange(f64),
}

/// Free energy F(psi) = f0 + a_slope*(V - v_crit)*psi^2 + b*psi^4, 0-D mode.
pub fn free_energy(psi: f64, core_mv: f64, p: &LandauParams) -> f64 {
    let a = p.a_slope * (core_mv - p.v_crit_mv);
    p.f0 + a * psi * psi + p.b * psi.powi(4)
}

/// Deterministic part of dpsi/dt: -dF/dpsi.
pub fn drift(psi: f64, core_mv: f64, p: &LandauParams) -> f64 {
    -2.0 * p.a_slope * (core_mv - p.v_crit_mv) * psi - 4.0 * p.b * psi.powi(3)
}

/// One Euler-Maruyama update of psi alone.
pub fn step_psi<R: Rng + ?Sized>(
    psi: f64,
    core_mv: f64,
    p: &LandauParams,
    dt: f64,
    rng: &mut R,
) -> f64 {
    debug_assert!(dt > 0.0);
    let noise = if p.noise_sigma > 0.0 {
        p.noise_sigma * dt.sqrt() * sampling::std_normal(rng)
    } else {
        0.0
    };
    psi + drift(psi, core_mv, p) * dt + noise
}

/// Spec-shaped step: advances psi in a state snapshot, all other fields unchanged.
pub fn landau_step<R: Rng + ?Sized>(
    s: &SubstrateState,
    p: &LandauParams,
    dt: f64,
    rng: &mut R,
) -> SubstrateState {
    let mut next = *s;
    next.psi = step_psi(s.psi, s.core_mv, p, dt, rng);
    next
}

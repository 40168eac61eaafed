//! Energy-scaling arithmetic for the two architectures under comparison: a
//! conventional register file whose switching energy grows as k·2^n, and a
//! hierarchical encoding whose energy grows as k'·log(n). The exponential
//! side overflows every native type for realistic n, so all ratios are
//! computed in the log2 domain and only reconstructed linearly when they fit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Logarithm base used by the hierarchical-encoding cost term. The scaling
/// literature leaves the base unstated, so it is explicit everywhere and
/// named in every report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum LogBase {
    Two,
    E,
    Ten,
}

impl LogBase {
    /// log_base(x).
    pub fn log_of(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
            LogBase::Ten => "10",
        })
    }
}

impl FromStr for LogBase {
    type Err = EnergeticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "2" => Ok(LogBase::Two),
            "e" | "E" => Ok(LogBase::E),
            "10" => Ok(LogBase::Ten),
            other => Err(EnergeticsError::BadParams(format!(
                "unknown log base {other:?}; expected 2, e, or 10"
            ))),
        }
    }
}

impl From<LogBase> for String {
    fn from(b: LogBase) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for LogBase {
    type Error = EnergeticsError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Scaling-model constants: state width n, architecture prefactors k and k',
/// per-transition switching energy, and the logarithm base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergeticsParams {
    /// State-bit count; at least 2.
    pub n: u64,
    pub k: f64,
    pub k_prime: f64,
    /// Energy per bit transition in joules.
    pub e_switch: f64,
    pub log_base: LogBase,
}

impl Default for EnergeticsParams {
    fn default() -> Self {
        EnergeticsParams {
            n: 16,
            k: 1.0,
            k_prime: 1.0,
            e_switch: 1e-15,
            log_base: LogBase::Two,
        }
    }
}

impl EnergeticsParams {
    pub fn validate(&self) -> Result<(), EnergeticsError> {
        if self.n < 2 {
            return Err(EnergeticsError::BadParams(format!("n must be >= 2, got {}", self.n)));
        }
        for (name, v) in [("k", self.k), ("k_prime", self.k_prime), ("e_switch", self.e_switch)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(EnergeticsError::BadParams(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnergeticsError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// log2 of the exponential-architecture energy k·2^n·e_switch, computed as
/// n + log2(k·e_switch) so 2^n is never materialized.
pub fn log2_energy_vn(p: &EnergeticsParams) -> Result<f64, EnergeticsError> {
    p.validate()?;
    Ok(p.n as f64 + (p.k * p.e_switch).log2())
}

/// Linear-domain hierarchical-encoding energy k'·log_base(n)·e_switch.
/// Logarithmic in n, so no overflow concern.
pub fn energy_hns(p: &EnergeticsParams) -> Result<f64, EnergeticsError> {
    p.validate()?;
    Ok(p.k_prime * p.log_base.log_of(p.n as f64) * p.e_switch)
}

/// log2 of the efficiency ratio eta = E_vn / E_hns. The shared e_switch
/// factor cancels symbolically, leaving n + (log2 k - log2 k') -
/// log2(log_base n); with k = k' the prefactor difference is exactly zero,
/// so integer cases stay exact.
pub fn log2_eta(p: &EnergeticsParams) -> Result<f64, EnergeticsError> {
    p.validate()?;
    let prefactor = p.k.log2() - p.k_prime.log2();
    Ok(p.n as f64 + prefactor - p.log_base.log_of(p.n as f64).log2())
}

/// The widely quoted headline ratio for n = 10^4 state bits.
pub const HEADLINE_ETA: f64 = 1e4;

/// Side-by-side efficiency summary: the literal formula value next to the
/// headline figure it is usually summarized as, without reconciling them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    pub params: EnergeticsParams,
    pub log2_energy_vn: f64,
    pub energy_hns_j: f64,
    /// Literal formula value, log2 domain.
    pub log2_eta: f64,
    /// 2^log2_eta when it fits in an f64, otherwise absent.
    pub eta_linear: Option<f64>,
    /// The quoted headline ratio, for comparison.
    pub headline_eta: f64,
    pub headline_log2_eta: f64,
    /// Plain-language comparison of the literal value against the headline.
    pub note: String,
}

/// Builds the side-by-side report for one parameter set.
pub fn efficiency_report(p: &EnergeticsParams) -> Result<EfficiencyReport, EnergeticsError> {
    let log2_vn = log2_energy_vn(p)?;
    let hns = energy_hns(p)?;
    let log2_ratio = log2_eta(p)?;
    let eta_linear = if log2_ratio < f64::MAX.log2() { Some(log2_ratio.exp2()) } else { None };
    let headline_log2 = HEADLINE_ETA.log2();
    let note = format!(
        "literal formula gives log2(eta) = {log2_ratio:.3} (base {} cost term), \
         the quoted headline ratio of 1e4 corresponds to log2(eta) = {headline_log2:.3}; \
         the two differ by {:.3} binary orders of magnitude and are reported side by side, \
         unreconciled",
        p.log_base,
        log2_ratio - headline_log2,
    );
    Ok(EfficiencyReport {
        params: *p,
        log2_energy_vn: log2_vn,
        energy_hns_j: hns,
        log2_eta: log2_ratio,
        eta_linear,
        headline_eta: HEADLINE_ETA,
        headline_log2_eta: headline_log2,
        note,
    })
}

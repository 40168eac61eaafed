//! In-process mock of the device HTTP API, backed by one substrate
//! simulator: GET telemetry, PATCH staged settings, POST restart (with a
//! telemetry blackout while "rebooting"), and an NDJSON share stream. A
//! background task advances simulated time against the wall clock, optionally
//! accelerated, so a desk run can cover hours of device time in seconds.

mod server;

pub use server::{serve_mock, MockHandle};

use serde::{Deserialize, Serialize};
use substrate::SubstrateConfig;

/// Model string advertised by the mock; the `-sim` suffix is what gates
/// acceleration features in clients.
pub const MOCK_ASIC_MODEL: &str = "BM1366-sim";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MockConfig {
    pub substrate: SubstrateConfig,
    /// TCP port; 0 picks an ephemeral one.
    pub port: u16,
    /// Wall-clock telemetry blackout after a restart, seconds.
    pub restart_blackout_s: f64,
    /// Simulated seconds per wall second.
    pub time_scale: f64,
    /// Wall-clock advance cadence of the simulation task, seconds.
    pub tick_s: f64,
    /// When >= 2, shares are adversarially shuffled within windows of this
    /// size before broadcast, to exercise client-side ordering enforcement.
    pub reorder_window: usize,
    /// Share-stream lines per write; > 1 models firmware-side batching.
    pub batch_size: usize,
}

impl Default for MockConfig {
    fn default() -> Self {
        MockConfig {
            substrate: SubstrateConfig::default(),
            port: 0,
            restart_blackout_s: 2.0,
            time_scale: 1.0,
            tick_s: 0.02,
            reorder_window: 0,
            batch_size: 1,
        }
    }
}

impl MockConfig {
    pub fn validate(&self) -> Result<(), MockError> {
        self.substrate.validate().map_err(|e| MockError::BadConfig(e.to_string()))?;
        if !(self.restart_blackout_s >= 0.0) {
            return Err(MockError::BadConfig(format!(
                "restart_blackout_s must be >= 0, got {}",
                self.restart_blackout_s
            )));
        }
        if !(self.time_scale > 0.0) {
            return Err(MockError::BadConfig(format!(
                "time_scale must be positive, got {}",
                self.time_scale
            )));
        }
        if !(self.tick_s > 0.0) {
            return Err(MockError::BadConfig(format!(
                "tick_s must be positive, got {}",
                self.tick_s
            )));
        }
        if self.batch_size == 0 {
            return Err(MockError::BadConfig("batch_size must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MockError {
    #[error("bad mock config: {0}")]
    BadConfig(String),
    #[error("failed to bind port: {0}")]
    Bind(#[from] std::io::Error),
}

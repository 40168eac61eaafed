//! Reservoir-computing validation layer: a surrogate echo-state network with
//! the same interface discipline as the physical substrate, plus the
//! harvesting, readout, and benchmark machinery needed to show that either
//! state source carries usable computational memory. Everything is seeded and
//! replayable.

pub mod bench;
pub mod harvest;
pub mod network;
pub mod readout;
pub mod tasks;

pub use bench::{
    run_mackey_glass_benchmark, run_narma10_benchmark, BenchmarkConfig, BenchmarkReport,
};
pub use harvest::{harvest_states, StateSource, SubstrateFeatureSource};
pub use network::{
    esp_test, reservoir_step, separation_test, ReservoirConfig, SurrogateReservoir,
};
pub use readout::{evaluate_nmse, train_readout, ReadoutModel};
pub use tasks::{mackey_glass_generate, narma10_generate, MackeyGlassParams};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReservoirError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sequence too short: needed {needed} entries, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("normal equations are singular; retry with lambda > 0")]
    SingularSystem,
    #[error("target variance is zero; normalized error is undefined")]
    ZeroVariance,
    #[error("series diverged at index {index} (value {value})")]
    Diverged { index: usize, value: f64 },
    #[error("delay {tau} is not an integral multiple of step {dt}")]
    NonIntegralDelay { tau: f64, dt: f64 },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error("state harvest failed: {0}")]
    Harvest(String),
}

//! Signal processing over share-event streams: windowed inter-arrival
//! statistics (with the legacy density-histogram entropy kept alongside a
//! probability-normalized one), Hamming diffusion, the K_sync order metric,
//! rate binning, Welch spectral estimation, heartbeat detection, and a fixed
//! per-window feature encoding.
//!
//! Every operation is a pure function over immutable inputs.

pub mod features;
pub mod hamming;
pub mod ksync;
pub mod series;
pub mod spectral;
pub mod timing;

pub use features::{encode_features, pac_index, FeatureConfig, FeatureVector};
pub use hamming::hamming_fraction;
pub use ksync::{compute_ksync, compute_ksync_normalized, KsyncInput};
pub use series::{rate_series, RateSeries, DEFAULT_BIN_S};
pub use spectral::{
    band_significance, detect_heartbeat, psd_estimate, HeartbeatBand, HeartbeatDetection,
    SpectralEstimate, SpectralPeak, WelchConfig,
};
pub use timing::{interarrival_stats, TimingStats};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MuseError {
    #[error("need at least {needed} timestamps, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("window must be at least {min} timestamps, got {got}")]
    WindowTooSmall { min: usize, got: usize },
    #[error("timestamps must strictly ascend (violation at index {index})")]
    NonMonotonic { index: usize },
    #[error("series of {got} samples is shorter than required {needed}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("bad config: {0}")]
    BadConfig(String),
}

//! Hardware abstraction layer for one share-producing device: a typed HTTP
//! client for telemetry, operating-point control, and the share-event
//! stream, plus the wire schema both the client and the bundled mock server
//! compile against.

pub mod client;
pub mod wire;

pub use client::{DeviceClient, DeviceEndpoint, MonotonicFilter, ReceivedShare, ShareStream};
pub use wire::{
    is_simulated_model, PatchSettings, SystemInfo, INFO_PATH, RESTART_PATH, SHARES_PATH,
    SYSTEM_PATH,
};

/// Client-side failures, split by what the caller should do about them.
#[derive(Debug, thiserror::Error)]
pub enum GhostError {
    /// Network-level failure; safe to retry.
    #[error("transport: {0}")]
    Transport(String),
    /// The device answered with a non-success status.
    #[error("protocol: device returned status {status}: {body}")]
    Protocol { status: u16, body: String },
    /// The device answered 2xx but the payload is unusable; raw body kept
    /// for diagnosis.
    #[error("malformed body: {detail}; raw: {raw}")]
    MalformedBody { detail: String, raw: String },
    /// Rejected locally before any wire traffic.
    #[error("invalid operating point: {0}")]
    InvalidPoint(#[from] substrate::OperatingPointError),
    /// The device never reported the commanded point back.
    #[error("operating point not verified within {waited_s:.1} s")]
    VerifyTimeout { waited_s: f64 },
    #[error("bad endpoint: {0}")]
    BadEndpoint(String),
}

impl GhostError {
    /// True for failures where retrying the same call can succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(self, GhostError::Transport(_))
    }
}

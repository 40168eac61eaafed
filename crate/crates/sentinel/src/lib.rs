//! Homeostasis for a running device: PID thermal control, operating-envelope
//! enforcement, telemetry anomaly detection, and voltage-regime
//! classification.
//!
//! The controller is single-owner mutable state (one per device); everything
//! else is pure.

pub mod anomaly;
pub mod limits;
pub mod pid;
pub mod regime;

pub use anomaly::{detect_anomalies, Alarm, AnomalyRules};
pub use limits::{enforce_limits, LimitViolation, Limits};
pub use pid::{PidController, PidGains};
pub use regime::{classify_regime, Regime};

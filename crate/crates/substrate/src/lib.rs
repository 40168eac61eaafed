//! Stochastic simulator of a voltage-stressed SHA-256 mining core.
//!
//! Three coupled pieces: a scalar order parameter with quartic restoring
//! dynamics driven by core voltage, an inhomogeneous Poisson process of share
//! arrivals whose rate is modulated by that order parameter (and an optional
//! injected heartbeat), and a first-order RC thermal plant. Share events carry
//! genuine SHA-256 digests so diffusion metrics downstream operate on the real
//! compression function, not a stand-in.
//!
//! Everything random flows through an injected seeded generator; two
//! substrates built from the same config produce identical event streams.

pub mod device;
pub mod hash;
pub mod landau;
pub mod sampling;
pub mod thermal;
pub mod types;

pub use device::{Substrate, SubstrateConfig};
pub use hash::{sha256_digest, Hash256};
pub use landau::LandauParams;
pub use types::{Heartbeat, OperatingPoint, OperatingPointError, ShareEvent, SubstrateState, Telemetry};

//! State harvesting: run an input sequence through a dynamical system and
//! collect one state row per step, dropping a washout prefix. The system is
//! either the explicit surrogate network or the simulated device itself, with
//! the per-window timing features standing in for the reservoir state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use muse::{
    encode_features, hamming_fraction, interarrival_stats, psd_estimate, rate_series,
    FeatureConfig, WelchConfig,
};
use substrate::{Heartbeat, Substrate, SubstrateConfig};

use crate::network::SurrogateReservoir;
use crate::{reservoir_step, ReservoirError};

/// Device-as-reservoir settings: each scalar input drives the injected tone
/// depth for one observation window.
#[derive(Debug, Clone)]
pub struct SubstrateFeatureSource {
    pub config: SubstrateConfig,
    /// Tone frequency used for every window.
    pub heartbeat_freq_hz: f64,
    /// Input-to-depth gain; the product is clamped to [0, 1].
    pub depth_scale: f64,
    /// Seconds of share stream per state row. Must cover at least two PSD
    /// segments (25.6 s at the default bin width).
    pub window_s: f64,
}

impl Default for SubstrateFeatureSource {
    fn default() -> Self {
        SubstrateFeatureSource {
            config: SubstrateConfig::default(),
            heartbeat_freq_hz: 2.4,
            depth_scale: 1.0,
            window_s: 30.0,
        }
    }
}

/// Where harvested state rows come from.
pub enum StateSource {
    /// Explicit echo-state network driven with a private noise stream.
    Surrogate { reservoir: SurrogateReservoir, xi_seed: u64 },
    /// Timing features of the simulated device, one window per input.
    SubstrateFeatures(Box<SubstrateFeatureSource>),
}

/// Drives `source` with `inputs` and returns one state row per post-washout
/// step, in order. `washout` rows are consumed but discarded.
pub fn harvest_states(
    source: &StateSource,
    inputs: &[Vec<f64>],
    washout: usize,
) -> Result<Vec<Vec<f64>>, ReservoirError> {
    if inputs.len() <= washout {
        return Err(ReservoirError::SequenceTooShort {
            needed: washout + 1,
            got: inputs.len(),
        });
    }
    match source {
        StateSource::Surrogate { reservoir, xi_seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*xi_seed);
            let mut x = vec![0.0; reservoir.n()];
            let mut rows = Vec::with_capacity(inputs.len() - washout);
            for (i, u) in inputs.iter().enumerate() {
                let xi = reservoir.draw_xi(&mut rng);
                x = reservoir_step(reservoir, &x, u, &xi)?;
                if i >= washout {
                    rows.push(x.clone());
                }
            }
            Ok(rows)
        }
        StateSource::SubstrateFeatures(src) => harvest_substrate(src, inputs, washout),
    }
}

fn harvest_substrate(
    src: &SubstrateFeatureSource,
    inputs: &[Vec<f64>],
    washout: usize,
) -> Result<Vec<Vec<f64>>, ReservoirError> {
    let mut dev = Substrate::new(src.config.clone())
        .map_err(|e| ReservoirError::Harvest(format!("bad device config: {e}")))?;
    let feature_cfg = FeatureConfig::default();
    let welch = WelchConfig::default();
    let mut rows = Vec::with_capacity(inputs.len() - washout);
    for (i, u) in inputs.iter().enumerate() {
        let drive = *u
            .first()
            .ok_or_else(|| ReservoirError::Harvest(format!("empty input row {i}")))?;
        let depth = (src.depth_scale * drive).clamp(0.0, 1.0);
        dev.set_heartbeat(Some(Heartbeat { freq_hz: src.heartbeat_freq_hz, depth }));
        let events = dev.sample_shares(src.window_s);
        if i < washout {
            continue;
        }
        let times: Vec<f64> = events.iter().map(|e| e.t).collect();
        let stats = interarrival_stats(&times, 64)
            .map_err(|e| ReservoirError::Harvest(format!("window {i}: {e}")))?;
        let series = rate_series(&events, muse::DEFAULT_BIN_S)
            .map_err(|e| ReservoirError::Harvest(format!("window {i}: {e}")))?;
        let est = psd_estimate(&series, &welch)
            .map_err(|e| ReservoirError::Harvest(format!("window {i}: {e}")))?;
        let pairs: Vec<f64> = events
            .windows(2)
            .take(200)
            .map(|p| hamming_fraction(&p[0].hash, &p[1].hash))
            .collect();
        if pairs.is_empty() {
            return Err(ReservoirError::Harvest(format!("window {i}: no share pairs")));
        }
        let ham = pairs.iter().sum::<f64>() / pairs.len() as f64;
        let features = encode_features(&stats, &est, ham, &series, &feature_cfg);
        rows.push(features.to_vec());
    }
    Ok(rows)
}

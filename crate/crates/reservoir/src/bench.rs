//! End-to-end benchmark runs: generate a task series, harvest surrogate
//! states, fit a ridge readout on the head of the data, and score normalized
//! mean squared error on the held-out tail against the mean predictor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::harvest::{harvest_states, StateSource};
use crate::network::{ReservoirConfig, SurrogateReservoir};
use crate::readout::{evaluate_nmse, train_readout};
use crate::tasks::{mackey_glass_generate, narma10_generate, MackeyGlassParams};
use crate::ReservoirError;

/// Everything a benchmark run needs besides the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchmarkConfig {
    pub reservoir: ReservoirConfig,
    /// Input/target pairs generated before the washout split.
    pub series_len: usize,
    pub washout: usize,
    /// Fraction of post-washout rows used for training; the rest is test.
    pub train_frac: f64,
    pub ridge_lambda: f64,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            reservoir: ReservoirConfig {
                input_dim: 2,
                spectral_radius: 0.95,
                input_scaling: 0.2,
                ..ReservoirConfig::default()
            },
            series_len: 2200,
            washout: 100,
            train_frac: 0.8,
            ridge_lambda: 1e-7,
        }
    }
}

impl BenchmarkConfig {
    fn validate(&self) -> Result<(), ReservoirError> {
        self.reservoir.validate()?;
        if self.reservoir.input_dim != 2 {
            return Err(ReservoirError::BadConfig(format!(
                "benchmarks drive the reservoir with [signal, bias], input_dim must be 2, got {}",
                self.reservoir.input_dim
            )));
        }
        if !(self.train_frac > 0.0 && self.train_frac < 1.0) {
            return Err(ReservoirError::BadConfig(format!(
                "train fraction must be in (0, 1), got {}",
                self.train_frac
            )));
        }
        if !(self.ridge_lambda >= 0.0) {
            return Err(ReservoirError::BadConfig(format!(
                "ridge lambda must be >= 0, got {}",
                self.ridge_lambda
            )));
        }
        Ok(())
    }
}

/// Outcome of one benchmark run; serializes as the artifact of record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub task: String,
    /// Held-out normalized mean squared error of the trained readout.
    pub nmse: f64,
    /// Held-out score of predicting the training-target mean everywhere.
    pub baseline_nmse: f64,
    pub train_len: usize,
    pub test_len: usize,
    pub seed: u64,
}

/// One-step-ahead prediction of the tenth-order autoregressive task from a
/// uniformly driven reservoir.
pub fn run_narma10_benchmark(
    cfg: &BenchmarkConfig,
    seed: u64,
) -> Result<BenchmarkReport, ReservoirError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<f64> = (0..cfg.series_len).map(|_| rng.random_range(0.0..0.5)).collect();
    let y = narma10_generate(&u)?;
    // Center the drive and add a constant bias channel.
    let inputs: Vec<Vec<f64>> = u.iter().map(|v| vec![v - 0.25, 1.0]).collect();
    score_one_step_ahead(cfg, seed, "narma10", &inputs, &u, &y)
}

/// One-step-ahead prediction of the delay-differential series from its own
/// past, via the reservoir.
pub fn run_mackey_glass_benchmark(
    cfg: &BenchmarkConfig,
    seed: u64,
) -> Result<BenchmarkReport, ReservoirError> {
    cfg.validate()?;
    let series = mackey_glass_generate(&MackeyGlassParams::default(), cfg.series_len + 1)?;
    let drive: Vec<f64> = series[..cfg.series_len].to_vec();
    let target = &series[..]; // target[t + 1] pairs with drive[t]
    let inputs: Vec<Vec<f64>> = drive.iter().map(|v| vec![v - 1.0, 1.0]).collect();
    score_one_step_ahead(cfg, seed, "mackey-glass", &inputs, &drive, target)
}

/// Shared scoring path. `targets[t + 1]` is predicted from the state after
/// consuming `inputs[t]`, with the raw drive value appended to each state row
/// so the readout sees the current input directly.
fn score_one_step_ahead(
    cfg: &BenchmarkConfig,
    seed: u64,
    task: &str,
    inputs: &[Vec<f64>],
    drive: &[f64],
    targets: &[f64],
) -> Result<BenchmarkReport, ReservoirError> {
    let reservoir = SurrogateReservoir::random(&cfg.reservoir, seed)?;
    let source = StateSource::Surrogate { reservoir, xi_seed: seed ^ 0x5eed };
    let states = harvest_states(&source, inputs, cfg.washout)?;

    // Row k of `states` is the state after step t = washout + k. It predicts
    // targets[t + 1], so the last state row has no target and is dropped.
    let usable = states.len() - 1;
    let design: Vec<Vec<f64>> = (0..usable)
        .map(|k| {
            let mut row = states[k].clone();
            row.push(drive[cfg.washout + k]);
            row
        })
        .collect();
    let wanted: Vec<Vec<f64>> =
        (0..usable).map(|k| vec![targets[cfg.washout + k + 1]]).collect();

    let train_len = (usable as f64 * cfg.train_frac).floor() as usize;
    let test_len = usable - train_len;
    if train_len == 0 || test_len == 0 {
        return Err(ReservoirError::SequenceTooShort { needed: 2, got: usable });
    }

    let model = train_readout(&design[..train_len], &wanted[..train_len], cfg.ridge_lambda)?;
    let predictions: Vec<f64> = model
        .predict_series(&design[train_len..])?
        .into_iter()
        .map(|row| row[0])
        .collect();
    let truth: Vec<f64> = wanted[train_len..].iter().map(|row| row[0]).collect();
    let nmse = evaluate_nmse(&predictions, &truth)?;

    let train_mean =
        wanted[..train_len].iter().map(|row| row[0]).sum::<f64>() / train_len as f64;
    let baseline_nmse = evaluate_nmse(&vec![train_mean; test_len], &truth)?;

    Ok(BenchmarkReport {
        task: task.to_string(),
        nmse,
        baseline_nmse,
        train_len,
        test_len,
        seed,
    })
}

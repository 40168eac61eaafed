use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::ReservoirError;

/// Trained linear readout: one weight row per target dimension, bias last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadoutModel {
    /// target_dim rows of (state_dim + 1) weights; the final entry is the
    /// bias.
    pub weights: Vec<Vec<f64>>,
    pub ridge_lambda: f64,
}

impl ReadoutModel {
    pub fn state_dim(&self) -> usize {
        self.weights[0].len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.weights.len()
    }

    /// Apply the readout to one state row.
    pub fn predict(&self, state: &[f64]) -> Result<Vec<f64>, ReservoirError> {
        if state.len() != self.state_dim() {
            return Err(ReservoirError::DimensionMismatch {
                expected: self.state_dim(),
                got: state.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .map(|row| {
                let bias = row[row.len() - 1];
                row[..row.len() - 1].iter().zip(state).map(|(w, x)| w * x).sum::<f64>() + bias
            })
            .collect())
    }

    /// Apply the readout to every row of a state matrix.
    pub fn predict_series(&self, states: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, ReservoirError> {
        states.iter().map(|s| self.predict(s)).collect()
    }
}

/// Ridge regression with an unregularized bias column, solved through a
/// Cholesky factorization of the normal equations. With the bias left out of
/// the penalty, lambda -> infinity drives every weight to zero and the
/// predictions to the target mean.
pub fn train_readout(
    states: &[Vec<f64>],
    targets: &[Vec<f64>],
    lambda: f64,
) -> Result<ReadoutModel, ReservoirError> {
    if states.is_empty() {
        return Err(ReservoirError::SequenceTooShort { needed: 1, got: 0 });
    }
    if targets.len() != states.len() {
        return Err(ReservoirError::DimensionMismatch {
            expected: states.len(),
            got: targets.len(),
        });
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(ReservoirError::BadConfig(format!("lambda must be finite and >= 0, got {lambda}")));
    }
    let m = states.len();
    let p = states[0].len();
    let k = targets[0].len();
    if states.iter().any(|row| row.len() != p) {
        return Err(ReservoirError::BadConfig("ragged state rows".into()));
    }
    if targets.iter().any(|row| row.len() != k) {
        return Err(ReservoirError::BadConfig("ragged target rows".into()));
    }

    // Design matrix with a trailing ones column for the bias.
    let design = DMatrix::from_fn(m, p + 1, |i, j| if j == p { 1.0 } else { states[i][j] });
    let y = DMatrix::from_fn(m, k, |i, j| targets[i][j]);
    let mut normal = design.transpose() * &design;
    for j in 0..p {
        normal[(j, j)] += lambda;
    }
    let rhs = design.transpose() * y;
    let solution = normal
        .cholesky()
        .ok_or(ReservoirError::SingularSystem)?
        .solve(&rhs);

    let weights = (0..k)
        .map(|t| (0..=p).map(|j| solution[(j, t)]).collect())
        .collect();
    Ok(ReadoutModel { weights, ridge_lambda: lambda })
}

/// Mean squared error divided by the population variance of the targets, so
/// the constant mean predictor scores exactly 1.
pub fn evaluate_nmse(predictions: &[f64], targets: &[f64]) -> Result<f64, ReservoirError> {
    if predictions.len() != targets.len() {
        return Err(ReservoirError::DimensionMismatch {
            expected: targets.len(),
            got: predictions.len(),
        });
    }
    if targets.is_empty() {
        return Err(ReservoirError::SequenceTooShort { needed: 1, got: 0 });
    }
    let n = targets.len() as f64;
    let mean = targets.iter().sum::<f64>() / n;
    let var = targets.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
    if var == 0.0 {
        return Err(ReservoirError::ZeroVariance);
    }
    let mse = predictions.iter().zip(targets).map(|(p, t)| (p - t).powi(2)).sum::<f64>() / n;
    Ok(mse / var)
}

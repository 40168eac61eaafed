use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ReservoirError;

/// Shape and scaling knobs for a randomly drawn reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReservoirConfig {
    /// State dimension.
    pub n: usize,
    pub input_dim: usize,
    /// Target spectral radius the recurrent matrix is rescaled to.
    pub spectral_radius: f64,
    /// Fraction of nonzero recurrent weights.
    pub connectivity: f64,
    /// Leak rate in (0, 1]; 1 recovers the plain recurrence.
    pub leak: f64,
    pub input_scaling: f64,
    /// Amplitude of the per-neuron perturbation stream.
    pub xi_scale: f64,
}

impl Default for ReservoirConfig {
    fn default() -> Self {
        ReservoirConfig {
            n: 100,
            input_dim: 1,
            spectral_radius: 0.9,
            connectivity: 0.1,
            leak: 1.0,
            input_scaling: 0.1,
            xi_scale: 0.0,
        }
    }
}

impl ReservoirConfig {
    pub fn validate(&self) -> Result<(), ReservoirError> {
        if self.n == 0 || self.input_dim == 0 {
            return Err(ReservoirError::BadConfig("dimensions must be positive".into()));
        }
        if !(self.spectral_radius > 0.0) {
            return Err(ReservoirError::BadConfig(format!(
                "spectral radius must be > 0, got {}",
                self.spectral_radius
            )));
        }
        if !(self.connectivity > 0.0 && self.connectivity <= 1.0) {
            return Err(ReservoirError::BadConfig(format!(
                "connectivity must be in (0, 1], got {}",
                self.connectivity
            )));
        }
        if !(self.leak > 0.0 && self.leak <= 1.0) {
            return Err(ReservoirError::BadConfig(format!(
                "leak must be in (0, 1], got {}",
                self.leak
            )));
        }
        if !(self.xi_scale >= 0.0) {
            return Err(ReservoirError::BadConfig(format!(
                "xi scale must be >= 0, got {}",
                self.xi_scale
            )));
        }
        Ok(())
    }
}

/// Fixed random network: dense input weights, sparse recurrent weights
/// rescaled to a recorded spectral radius, tanh activation with leaky
/// integration.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateReservoir {
    n: usize,
    input_dim: usize,
    /// n rows of input_dim weights.
    w_in: Vec<Vec<f64>>,
    /// Sparse rows of (column, weight).
    a_rows: Vec<Vec<(usize, f64)>>,
    leak: f64,
    xi_scale: f64,
    spectral_radius: f64,
}

fn spectral_radius_of(dense: &DMatrix<f64>) -> f64 {
    dense.complex_eigenvalues().iter().map(|e| e.norm()).fold(0.0, f64::max)
}

fn sparsify(dense: &DMatrix<f64>) -> Vec<Vec<(usize, f64)>> {
    (0..dense.nrows())
        .map(|i| {
            (0..dense.ncols())
                .filter_map(|j| {
                    let v = dense[(i, j)];
                    (v != 0.0).then_some((j, v))
                })
                .collect()
        })
        .collect()
}

impl SurrogateReservoir {
    /// Draw a reservoir from the seed: uniform input weights, sparse uniform
    /// recurrent weights rescaled to the configured spectral radius.
    pub fn random(cfg: &ReservoirConfig, seed: u64) -> Result<Self, ReservoirError> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w_in: Vec<Vec<f64>> = (0..cfg.n)
            .map(|_| {
                (0..cfg.input_dim)
                    .map(|_| rng.random_range(-cfg.input_scaling..cfg.input_scaling))
                    .collect()
            })
            .collect();
        let mut dense = DMatrix::<f64>::zeros(cfg.n, cfg.n);
        for i in 0..cfg.n {
            for j in 0..cfg.n {
                if rng.random::<f64>() < cfg.connectivity {
                    dense[(i, j)] = rng.random_range(-1.0..1.0);
                }
            }
        }
        let raw_radius = spectral_radius_of(&dense);
        if raw_radius < 1e-12 {
            return Err(ReservoirError::BadConfig(
                "drawn recurrent matrix has zero spectral radius; raise n or connectivity".into(),
            ));
        }
        dense *= cfg.spectral_radius / raw_radius;
        Ok(SurrogateReservoir {
            n: cfg.n,
            input_dim: cfg.input_dim,
            w_in,
            a_rows: sparsify(&dense),
            leak: cfg.leak,
            xi_scale: cfg.xi_scale,
            spectral_radius: cfg.spectral_radius,
        })
    }

    /// Build from explicit dense weights; the spectral radius is measured,
    /// not rescaled.
    pub fn from_parts(
        w_in: Vec<Vec<f64>>,
        a: Vec<Vec<f64>>,
        leak: f64,
        xi_scale: f64,
    ) -> Result<Self, ReservoirError> {
        let n = w_in.len();
        if n == 0 {
            return Err(ReservoirError::BadConfig("state dimension must be positive".into()));
        }
        let input_dim = w_in[0].len();
        if w_in.iter().any(|row| row.len() != input_dim) {
            return Err(ReservoirError::BadConfig("ragged input weight rows".into()));
        }
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(ReservoirError::DimensionMismatch { expected: n, got: a.len() });
        }
        if !(leak > 0.0 && leak <= 1.0) {
            return Err(ReservoirError::BadConfig(format!("leak must be in (0, 1], got {leak}")));
        }
        let dense = DMatrix::from_fn(n, n, |i, j| a[i][j]);
        Ok(SurrogateReservoir {
            n,
            input_dim,
            w_in,
            a_rows: sparsify(&dense),
            leak,
            xi_scale,
            spectral_radius: spectral_radius_of(&dense),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn leak(&self) -> f64 {
        self.leak
    }

    pub fn xi_scale(&self) -> f64 {
        self.xi_scale
    }

    /// The measured spectral radius of the recurrent matrix.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Draw one per-neuron perturbation vector at the configured amplitude.
    pub fn draw_xi(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.n).map(|_| self.xi_scale * substrate::sampling::std_normal(rng)).collect()
    }
}

/// One state update: x' = (1 - leak) x + leak tanh(W_in u + A x + xi).
pub fn reservoir_step(
    r: &SurrogateReservoir,
    x: &[f64],
    u: &[f64],
    xi: &[f64],
) -> Result<Vec<f64>, ReservoirError> {
    if x.len() != r.n {
        return Err(ReservoirError::DimensionMismatch { expected: r.n, got: x.len() });
    }
    if u.len() != r.input_dim {
        return Err(ReservoirError::DimensionMismatch { expected: r.input_dim, got: u.len() });
    }
    if xi.len() != r.n {
        return Err(ReservoirError::DimensionMismatch { expected: r.n, got: xi.len() });
    }
    let mut next = Vec::with_capacity(r.n);
    for i in 0..r.n {
        let mut pre = xi[i];
        for (k, w) in r.w_in[i].iter().enumerate() {
            pre += w * u[k];
        }
        for (j, w) in &r.a_rows[i] {
            pre += w * x[*j];
        }
        next.push((1.0 - r.leak) * x[i] + r.leak * pre.tanh());
    }
    Ok(next)
}

/// Run both initial states through the same input and perturbation streams
/// and report the state distance at every step. Fading memory holds when the
/// series decays below 1e-6 after washout.
pub fn esp_test(
    r: &SurrogateReservoir,
    inputs: &[Vec<f64>],
    x0_a: &[f64],
    x0_b: &[f64],
    xi_seed: u64,
) -> Result<Vec<f64>, ReservoirError> {
    let mut rng = ChaCha8Rng::seed_from_u64(xi_seed);
    let xi_stream: Vec<Vec<f64>> = inputs.iter().map(|_| r.draw_xi(&mut rng)).collect();
    let mut xa = x0_a.to_vec();
    let mut xb = x0_b.to_vec();
    let mut divergence = Vec::with_capacity(inputs.len());
    for (u, xi) in inputs.iter().zip(&xi_stream) {
        xa = reservoir_step(r, &xa, u, xi)?;
        xb = reservoir_step(r, &xb, u, xi)?;
        let d = xa.iter().zip(&xb).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        divergence.push(d);
    }
    Ok(divergence)
}

/// Drive two input sequences from the same zero state and xi stream; the
/// Euclidean distance between terminal states measures separation.
pub fn separation_test(
    r: &SurrogateReservoir,
    input_a: &[Vec<f64>],
    input_b: &[Vec<f64>],
    xi_seed: u64,
) -> Result<f64, ReservoirError> {
    if input_a.len() != input_b.len() {
        return Err(ReservoirError::DimensionMismatch {
            expected: input_a.len(),
            got: input_b.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(xi_seed);
    let xi_stream: Vec<Vec<f64>> = input_a.iter().map(|_| r.draw_xi(&mut rng)).collect();
    let mut xa = vec![0.0; r.n];
    let mut xb = vec![0.0; r.n];
    for ((ua, ub), xi) in input_a.iter().zip(input_b).zip(&xi_stream) {
        xa = reservoir_step(r, &xa, ua, xi)?;
        xb = reservoir_step(r, &xb, ub, xi)?;
    }
    Ok(xa.iter().zip(&xb).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
}

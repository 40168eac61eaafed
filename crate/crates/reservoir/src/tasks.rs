use serde::{Deserialize, Serialize};

use crate::ReservoirError;

/// Tenth-order nonlinear autoregressive benchmark series. `y[0]` is the zero
/// seed; `y[t+1]` folds in `u[t]` and, from lag 9 on, the product
/// `u[t-9]*u[t]`. Inputs must lie in [0, 0.5].
pub fn narma10_generate(u: &[f64]) -> Result<Vec<f64>, ReservoirError> {
    if let Some(bad) = u.iter().position(|v| !(0.0..=0.5).contains(v)) {
        return Err(ReservoirError::BadInput(format!(
            "input {} at index {bad} outside [0, 0.5]",
            u[bad]
        )));
    }
    if u.is_empty() {
        return Ok(Vec::new());
    }
    let mut y = vec![0.0f64; u.len()];
    for t in 0..u.len() - 1 {
        let window: f64 = (0..10).map(|i| if t >= i { y[t - i] } else { 0.0 }).sum();
        let lagged = if t >= 9 { u[t - 9] } else { 0.0 };
        let next = 0.3 * y[t] + 0.05 * y[t] * window + 1.5 * lagged * u[t] + 0.1;
        if !next.is_finite() || next.abs() > 10.0 {
            return Err(ReservoirError::Diverged { index: t + 1, value: next });
        }
        y[t + 1] = next;
    }
    Ok(y)
}

/// Delay-differential benchmark generator settings. The delay must be an
/// integer number of integration steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MackeyGlassParams {
    pub tau: f64,
    pub beta: f64,
    pub gamma: f64,
    pub exponent: f64,
    pub dt: f64,
    /// Leading samples dropped before the returned series starts.
    pub transient_samples: usize,
}

impl Default for MackeyGlassParams {
    fn default() -> Self {
        MackeyGlassParams {
            tau: 17.0,
            beta: 0.2,
            gamma: 0.1,
            exponent: 10.0,
            dt: 1.0,
            transient_samples: 1000,
        }
    }
}

/// RK4 integration of x' = beta x_d / (1 + x_d^exponent) - gamma x with
/// x_d = x(t - tau), constant history 1.2 for t <= 0. Half-step delayed
/// values come from cubic Hermite interpolation of the stored trajectory, so
/// the integrator keeps its fourth-order convergence.
pub fn mackey_glass_generate(
    p: &MackeyGlassParams,
    n_samples: usize,
) -> Result<Vec<f64>, ReservoirError> {
    if !(p.dt > 0.0) {
        return Err(ReservoirError::BadConfig(format!("dt must be positive, got {}", p.dt)));
    }
    if !(p.tau > 0.0) {
        return Err(ReservoirError::BadConfig(format!("tau must be positive, got {}", p.tau)));
    }
    let ratio = p.tau / p.dt;
    if (ratio - ratio.round()).abs() > 1e-9 || ratio.round() < 1.0 {
        return Err(ReservoirError::NonIntegralDelay { tau: p.tau, dt: p.dt });
    }
    let m = ratio.round() as usize;

    let f = |x: f64, xd: f64| p.beta * xd / (1.0 + xd.powf(p.exponent)) - p.gamma * x;
    let total = p.transient_samples + n_samples;

    // Trajectory with stored derivatives; grid index g is time g*dt. The
    // initial function is the constant 1.2 on t <= 0, so lookups left of the
    // grid return it exactly.
    let mut xs: Vec<f64> = Vec::with_capacity(total + 1);
    let mut ds: Vec<f64> = Vec::with_capacity(total + 1);
    xs.push(1.2);
    ds.push(f(1.2, 1.2));

    let grid_x = |xs: &[f64], g: isize| -> f64 {
        if g <= 0 {
            if g == 0 {
                xs[0]
            } else {
                1.2
            }
        } else {
            xs[g as usize]
        }
    };
    // History value midway between grid points g and g+1.
    let mid_x = |xs: &[f64], ds: &[f64], g: isize| -> f64 {
        if g + 1 <= 0 {
            return 1.2;
        }
        let (x0, d0) = if g < 0 { (1.2, 0.0) } else { (xs[g as usize], ds[g as usize]) };
        let gi = (g + 1) as usize;
        let (x1, d1) = (xs[gi], ds[gi]);
        0.5 * (x0 + x1) + p.dt * (d0 - d1) / 8.0
    };

    for g in 0..total {
        let gi = g as isize;
        let x = xs[g];
        let xd0 = grid_x(&xs, gi - m as isize);
        let xd_mid = mid_x(&xs, &ds, gi - m as isize);
        let xd1 = grid_x(&xs, gi + 1 - m as isize);
        let k1 = f(x, xd0);
        let k2 = f(x + 0.5 * p.dt * k1, xd_mid);
        let k3 = f(x + 0.5 * p.dt * k2, xd_mid);
        let k4 = f(x + p.dt * k3, xd1);
        let next = x + p.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        xs.push(next);
        ds.push(f(next, xd1));
    }

    Ok(xs[p.transient_samples + 1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_input_converges_to_the_quadratic_fixed_point() {
        let y = narma10_generate(&vec![0.0; 1000]).expect("zero input is in range");
        // y* solves y = 0.3y + 0.5y^2 + 0.1, i.e. the smaller root
        // 0.7 - sqrt(0.29).
        let fixed = 0.7 - 0.29f64.sqrt();
        let last = *y.last().expect("nonempty");
        assert!(
            (last - fixed).abs() < 1e-12,
            "converged to {last}, fixed point {fixed}"
        );
    }

    #[test]
    fn first_ten_outputs_ignore_the_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ua: Vec<f64> = (0..50).map(|_| rng.random_range(0.0..0.5)).collect();
        let ub: Vec<f64> = (0..50).map(|_| rng.random_range(0.0..0.5)).collect();
        let ya = narma10_generate(&ua).expect("in range");
        let yb = narma10_generate(&ub).expect("in range");
        assert_eq!(&ya[..10], &yb[..10], "no input term can land before lag 9");
        assert_ne!(ya[10], yb[10], "lag-9 product must show up at index 10");
    }

    #[test]
    fn seeded_uniform_input_stays_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let u: Vec<f64> = (0..1000).map(|_| rng.random_range(0.0..0.5)).collect();
        let y = narma10_generate(&u).expect("standard regime must not diverge");
        assert_eq!(y[0], 0.0, "zero seed entry");
        assert!(
            y[1..].iter().all(|v| *v > 0.0 && *v < 1.0),
            "outputs must stay in (0, 1)"
        );
    }

    #[test]
    fn saturated_input_diverges_with_the_offending_index() {
        let err = narma10_generate(&vec![0.5; 400]).unwrap_err();
        match err {
            ReservoirError::Diverged { index, value } => {
                assert!(index > 10, "divergence takes a while to build, index {index}");
                assert!(value.abs() > 10.0);
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_input_is_rejected() {
        let err = narma10_generate(&[0.1, 0.6]).unwrap_err();
        assert!(matches!(err, ReservoirError::BadInput(_)));
        let err = narma10_generate(&[-0.1]).unwrap_err();
        assert!(matches!(err, ReservoirError::BadInput(_)));
    }

    #[test]
    fn zero_beta_reduces_to_pure_exponential_decay() {
        let p = MackeyGlassParams {
            beta: 0.0,
            dt: 0.25,
            transient_samples: 0,
            ..MackeyGlassParams::default()
        };
        let xs = mackey_glass_generate(&p, 200).expect("valid params");
        for (i, x) in xs.iter().enumerate() {
            let t = (i + 1) as f64 * p.dt;
            let exact = 1.2 * (-p.gamma * t).exp();
            assert!(
                ((x - exact) / exact).abs() < 1e-7,
                "t={t}: got {x}, analytic {exact}"
            );
        }
    }

    #[test]
    fn default_parameters_stay_inside_the_attractor_bounds() {
        let p = MackeyGlassParams::default();
        let xs = mackey_glass_generate(&p, 100_000).expect("valid params");
        assert_eq!(xs.len(), 100_000);
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo > 0.2 && hi < 1.6, "series range [{lo}, {hi}] outside (0.2, 1.6)");
    }

    #[test]
    fn halving_the_step_barely_moves_the_trajectory() {
        let coarse = MackeyGlassParams { dt: 0.25, transient_samples: 0, ..Default::default() };
        let fine = MackeyGlassParams { dt: 0.125, transient_samples: 0, ..Default::default() };
        let xc = mackey_glass_generate(&coarse, 100).expect("valid params");
        let xf = mackey_glass_generate(&fine, 200).expect("valid params");
        for i in 0..100 {
            let a = xc[i];
            let b = xf[2 * i + 1];
            assert!(
                ((a - b) / b).abs() < 1e-6,
                "sample {i}: dt 0.25 gives {a}, dt 0.125 gives {b}"
            );
        }
    }

    #[test]
    fn non_integral_delay_is_rejected() {
        let p = MackeyGlassParams { dt: 0.3, ..Default::default() };
        match mackey_glass_generate(&p, 10) {
            Err(ReservoirError::NonIntegralDelay { tau, dt }) => {
                assert_eq!(tau, 17.0);
                assert_eq!(dt, 0.3);
            }
            other => panic!("expected delay rejection, got {other:?}"),
        }
    }

    #[test]
    fn same_parameters_give_the_same_series() {
        let p = MackeyGlassParams::default();
        let a = mackey_glass_generate(&p, 500).expect("valid params");
        let b = mackey_glass_generate(&p, 500).expect("valid params");
        assert_eq!(a, b, "the generator is fully deterministic");
    }
}

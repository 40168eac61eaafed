//! Release gate for the workspace: twelve end-to-end checks, one per
//! criterion, each ending in a single printed PASS line carrying the measured
//! numbers. Tolerances and budgets are pinned here rather than in the
//! libraries so a change to either side shows up as a diff in this file.
//!
//! Run serially for readable output:
//!   cargo test --test acceptance -- --test-threads=1 --nocapture

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghost::DeviceEndpoint;
use mockdevice::{serve_mock, MockConfig};
use muse::spectral::{self, HeartbeatBand, HeartbeatDetection, WelchConfig};
use muse::{hamming_fraction, interarrival_stats, rate_series, DEFAULT_BIN_S};
use orchestrator::{default_voltage_plan, read_log, replay_log, run_sweep};
use reservoir::{
    esp_test, run_narma10_benchmark, train_readout, BenchmarkConfig, ReservoirConfig,
    SurrogateReservoir,
};
use sentinel::{classify_regime, Limits, PidController, Regime};
use substrate::device::RateCoupling;
use substrate::landau::{step_psi, LandauParams};
use substrate::thermal::{self, ThermalParams};
use substrate::{sha256_digest, Heartbeat, ShareEvent, Substrate, SubstrateConfig, SubstrateState};

fn pass(number: u32, name: &str, detail: impl AsRef<str>) {
    println!("acceptance {number:02} {name}: PASS ({})", detail.as_ref());
}

/// Share generator with the order-parameter coupling switched off, so the
/// event channel is a plain (optionally tone-modulated) Poisson process.
fn poisson_substrate(heartbeat: Option<Heartbeat>, seed: u64) -> Substrate {
    let cfg = SubstrateConfig {
        initial: SubstrateState { heartbeat, ..SubstrateState::default() },
        coupling: RateCoupling { c_psi: 0.0, ..RateCoupling::default() },
        landau: LandauParams { noise_sigma: 0.0, ..LandauParams::default() },
        seed,
        ..SubstrateConfig::default()
    };
    Substrate::new(cfg).expect("decoupled default config is valid")
}

#[test]
fn criterion_01_poisson_baseline_cv() {
    let started = Instant::now();
    let mut dev = poisson_substrate(None, 1);
    let events = dev.sample_shares(2100.0);
    assert!(
        events.len() >= 100_000,
        "expected at least 1e5 events from 2100 s at 50/s, got {}",
        events.len()
    );
    let times: Vec<f64> = events.iter().take(100_000).map(|e| e.t).collect();
    let stats = interarrival_stats(&times, times.len()).expect("1e5 timestamps is plenty");
    let elapsed = started.elapsed();

    assert!(
        (0.98..=1.02).contains(&stats.cv),
        "inter-arrival CV {} falls outside [0.98, 1.02]",
        stats.cv
    );
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}, budget is 10 s");
    pass(1, "poisson baseline", format!("CV {:.5} over 1e5 events in {elapsed:.2?}", stats.cv));
}

#[test]
fn criterion_02_hash_avalanche() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    const PAIRS: usize = 10_000;
    let mut sum = 0.0;
    for _ in 0..PAIRS {
        let len = rng.random_range(1..=64);
        let mut message = vec![0u8; len];
        rng.fill(&mut message[..]);
        let bit = rng.random_range(0..len * 8);
        let mut flipped = message.clone();
        flipped[bit / 8] ^= 1 << (bit % 8);
        sum += hamming_fraction(&sha256_digest(&message), &sha256_digest(&flipped));
    }
    let mean = sum / PAIRS as f64;
    let elapsed = started.elapsed();

    assert!(
        (mean - 0.5).abs() <= 0.02,
        "mean Hamming fraction {mean} over {PAIRS} single-bit flips is outside 0.5 +/- 0.02"
    );
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget is 5 s");
    pass(2, "hash avalanche", format!("mean flip fraction {mean:.5} over 1e4 pairs in {elapsed:.2?}"));
}

/// Timestamps -> binned rate -> Welch PSD -> band detection, at the default
/// 10 dB prominence gate.
fn detect_tone(events: &[ShareEvent]) -> Option<HeartbeatDetection> {
    let series = rate_series(events, DEFAULT_BIN_S).expect("positive bin width");
    let est = spectral::psd_estimate(&series, &WelchConfig::default())
        .expect("120 s at 20 Hz is long enough for the default segments");
    spectral::detect_heartbeat(&est, HeartbeatBand::default(), spectral::DEFAULT_THRESHOLD_DB)
}

#[test]
fn criterion_03_heartbeat_recovery_and_false_positive_rate() {
    let injected = poisson_substrate(Some(Heartbeat { freq_hz: 2.4, depth: 0.8 }), 3)
        .sample_shares(120.0);
    let detection = detect_tone(&injected)
        .expect("a 0.8-depth 2.4 Hz tone over 120 s must clear the 10 dB gate");
    assert!(
        (detection.freq_hz - 2.4).abs() <= 0.1,
        "detected {} Hz, want 2.4 +/- 0.1",
        detection.freq_hz
    );
    assert!(
        detection.significance_db >= 10.0,
        "prominence {} dB is below the 10 dB gate",
        detection.significance_db
    );

    let flat = poisson_substrate(Some(Heartbeat { freq_hz: 2.4, depth: 0.0 }), 3)
        .sample_shares(120.0);
    assert!(
        detect_tone(&flat).is_none(),
        "a zero-depth tone must not be detected, got {:?}",
        detect_tone(&flat)
    );

    let mut false_positives = 0usize;
    const SEEDS: usize = 1000;
    for seed in 0..SEEDS as u64 {
        let noise = poisson_substrate(None, 1000 + seed).sample_shares(120.0);
        if detect_tone(&noise).is_some() {
            false_positives += 1;
        }
    }
    let rate = false_positives as f64 / SEEDS as f64;
    assert!(
        rate < 0.01,
        "{false_positives}/{SEEDS} pure-noise runs produced a detection; need < 1%"
    );
    pass(
        3,
        "heartbeat recovery",
        format!(
            "{:.3} Hz at {:.1} dB; zero depth silent; {false_positives}/{SEEDS} false positives",
            detection.freq_hz, detection.significance_db
        ),
    );
}

/// The fielded monitoring statistics, re-derived from scratch with numpy's
/// documented semantics: diff, population std over mean, then a 20-bin
/// density histogram (linspace edges, last edge pinned, last bin closed,
/// per-bin widths) feeding -sum(h * ln(h + 1e-10)).
fn reference_stats(times: &[f64]) -> (f64, f64) {
    assert!(times.len() > 10, "the reference gate requires more than 10 timestamps");
    let deltas: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let n = deltas.len() as f64;
    let mean = deltas.iter().sum::<f64>() / n;
    let std = (deltas.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n).sqrt();
    let cv = std / mean;

    const BINS: usize = 20;
    let (mut lo, mut hi) = deltas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let step = (hi - lo) / BINS as f64;
    let mut edges: Vec<f64> = (0..=BINS).map(|i| lo + step * i as f64).collect();
    edges[BINS] = hi;

    // Bin by searching the edge array directly, deliberately avoiding the
    // index arithmetic the library uses, so the two paths are independent.
    let mut counts = [0u64; BINS];
    for &d in &deltas {
        let idx = if d >= edges[BINS] {
            BINS - 1
        } else {
            match edges.binary_search_by(|e| e.partial_cmp(&d).expect("finite edges")) {
                Ok(i) => i.min(BINS - 1),
                Err(i) => i - 1,
            }
        };
        counts[idx] += 1;
    }

    let total = n;
    let mut entropy = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let width = edges[i + 1] - edges[i];
        let h = c as f64 / width / total;
        entropy -= h * (h + 1e-10).ln();
    }
    (cv, entropy)
}

fn relative_gap(actual: f64, reference: f64) -> f64 {
    if actual == reference {
        0.0
    } else {
        (actual - reference).abs() / reference.abs()
    }
}

#[test]
fn criterion_04_entropy_definition_compatibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for fixture in 0..100usize {
        let n = rng.random_range(11..=400);
        let times: Vec<f64> = if fixture % 4 == 2 {
            // Exactly constant spacing: eighth-steps from an integer origin
            // stay representable, so the reconstructed deltas are all equal
            // and both computations take the degenerate-range path.
            let origin = rng.random_range(0..100) as f64;
            let d = rng.random_range(2..=24) as f64 / 8.0;
            (0..=n).map(|i| origin + i as f64 * d).collect()
        } else {
            let mut deltas: Vec<f64> = match fixture % 4 {
                0 => {
                    let rate = rng.random_range(0.2..2.0);
                    (0..n).map(|_| substrate::sampling::exponential(&mut rng, rate)).collect()
                }
                1 => {
                    let lo = rng.random_range(0.1..1.0);
                    let width = rng.random_range(2.0..6.0);
                    (0..n).map(|_| rng.random_range(lo..lo + width)).collect()
                }
                _ => (0..n).map(|_| if rng.random::<bool>() { 0.1 } else { 1.9 }).collect(),
            };
            if fixture % 4 == 3 {
                // Keep the two-point fixture genuinely two-valued.
                deltas[0] = 0.1;
                deltas[1] = 1.9;
            }
            let mut t = rng.random_range(0.0..5.0);
            let mut times = vec![t];
            for d in &deltas {
                t += d;
                times.push(t);
            }
            times
        };

        let stats = interarrival_stats(&times, times.len()).expect("fixtures carry >= 12 stamps");
        let (ref_cv, ref_entropy) = reference_stats(&times);
        let entropy_gap = relative_gap(stats.entropy_density, ref_entropy);
        let cv_gap = relative_gap(stats.cv, ref_cv);
        assert!(
            entropy_gap <= 1e-12,
            "fixture {fixture}: entropy {} vs reference {} (relative {entropy_gap:.3e})",
            stats.entropy_density,
            ref_entropy
        );
        assert!(
            cv_gap <= 1e-12,
            "fixture {fixture}: cv {} vs reference {} (relative {cv_gap:.3e})",
            stats.cv,
            ref_cv
        );
        worst = worst.max(entropy_gap).max(cv_gap);
    }
    pass(4, "entropy compatibility", format!("100 fixtures, worst relative gap {worst:.3e}"));
}

fn integrate_psi(
    mut psi: f64,
    core_mv: f64,
    p: &LandauParams,
    dt: f64,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> f64 {
    for _ in 0..steps {
        psi = step_psi(psi, core_mv, p, dt, rng);
    }
    psi
}

#[test]
fn criterion_05_phase_model_equilibria_and_step_agreement() {
    let p = LandauParams { noise_sigma: 0.0, ..LandauParams::default() };
    let dt = SubstrateConfig::default().dt_s;
    let mut rng = ChaCha8Rng::seed_from_u64(5); // untouched while noise_sigma is 0

    // Noise-free trajectories settle onto the analytic equilibria, from both
    // sides of zero, above and below the critical voltage.
    let mut worst_eq = 0.0f64;
    for &mv in &[990.0, 950.0, 900.0, 880.0, 860.0, 850.0, 840.0, 820.0] {
        for sign in [1.0, -1.0] {
            let end = integrate_psi(0.05 * sign, mv, &p, dt, 300_000, &mut rng);
            let target = sign * p.equilibrium_psi(mv);
            if target == 0.0 {
                assert!(end.abs() <= 1e-6, "psi {end} at {mv} mV should have decayed to 0");
                worst_eq = worst_eq.max(end.abs());
            } else {
                let rel = ((end - target) / target).abs();
                assert!(
                    rel <= 1e-6,
                    "psi {end} at {mv} mV vs analytic {target} (relative {rel:.3e})"
                );
                worst_eq = worst_eq.max(rel);
            }
        }
    }

    // The default step tracks a 100x finer reference within 1% at the
    // endpoint of a 10 s run, across seeded voltage/start combinations.
    // Endpoints that decay toward zero are compared on a 1e-3 floor.
    let mut worst_step = 0.0f64;
    for seed in 0..20u64 {
        let mut srng = ChaCha8Rng::seed_from_u64(seed);
        let mv = srng.random_range(820.0..990.0);
        let psi0 = srng.random_range(-1.0..1.0);
        let coarse = integrate_psi(psi0, mv, &p, dt, (10.0 / dt) as usize, &mut rng);
        let fine_dt = dt / 100.0;
        let fine = integrate_psi(psi0, mv, &p, fine_dt, (10.0 / fine_dt) as usize, &mut rng);
        let gap = (coarse - fine).abs() / fine.abs().max(1e-3);
        assert!(
            gap <= 0.01,
            "seed {seed} ({mv:.1} mV, psi0 {psi0:.3}): endpoint {coarse} vs refined {fine} (gap {gap:.4})"
        );
        worst_step = worst_step.max(gap);
    }
    pass(
        5,
        "phase model",
        format!("equilibria within {worst_eq:.2e}; coarse-vs-fine endpoint gap <= {worst_step:.2e} on 20 seeds"),
    );
}

fn divergence_series(spectral_radius: f64, seed: u64, inputs: &[Vec<f64>]) -> Vec<f64> {
    let cfg = ReservoirConfig { spectral_radius, ..ReservoirConfig::default() };
    let net = SurrogateReservoir::random(&cfg, seed).expect("valid surrogate config");
    let zero = vec![0.0; cfg.n];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b5e55ed);
    let offset: Vec<f64> = (0..cfg.n).map(|_| rng.random_range(-1.0..1.0)).collect();
    esp_test(&net, inputs, &zero, &offset, seed).expect("consistent dimensions")
}

#[test]
fn criterion_06_echo_state_property_by_spectral_radius() {
    let mut convergence_steps = Vec::new();
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x600 + seed);
        let inputs: Vec<Vec<f64>> =
            (0..600).map(|_| vec![rng.random_range(-1.0..1.0)]).collect();

        let contracting = divergence_series(0.8, seed, &inputs);
        let step = contracting.iter().position(|&d| d < 1e-6);
        match step {
            Some(s) if s < 500 => convergence_steps.push(s),
            _ => panic!(
                "seed {seed}: radius 0.8 did not contract below 1e-6 within 500 steps (d[499] = {:.3e})",
                contracting[499]
            ),
        }

        let expanding = divergence_series(2.0, seed, &inputs);
        assert!(
            expanding[..500].iter().all(|&d| d >= 1e-6),
            "seed {seed}: radius 2.0 unexpectedly passed the fading-memory test"
        );
    }
    convergence_steps.sort_unstable();
    pass(
        6,
        "echo state property",
        format!(
            "20/20 seeds contract at radius 0.8 (median step {}), 20/20 stay apart at radius 2.0",
            convergence_steps[convergence_steps.len() / 2]
        ),
    );
}

#[test]
fn criterion_07_narma10_beats_mean_predictor() {
    let started = Instant::now();
    let cfg = BenchmarkConfig::default();
    assert_eq!(cfg.reservoir.n, 100, "the benchmark reservoir is pinned at 100 nodes");
    let mut ratios = Vec::new();
    for seed in 1..=3u64 {
        let report = run_narma10_benchmark(&cfg, seed).expect("benchmark completes");
        let ratio = report.nmse / report.baseline_nmse;
        assert!(
            ratio <= 0.2,
            "seed {seed}: NMSE {} is {ratio:.3} of the mean predictor's {}, above the 0.2 bound",
            report.nmse,
            report.baseline_nmse
        );
        ratios.push(format!("{ratio:.3}"));
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget is 60 s");
    pass(
        7,
        "narma10 readout",
        format!("NMSE ratios [{}] vs mean predictor in {elapsed:.2?}", ratios.join(", ")),
    );
}

/// Brute force ridge solve: form X^T X + lambda I (bias column unpenalized)
/// and X^T Y literally, then Gauss-Jordan with partial pivoting. Slow and
/// obvious on purpose; returns target_dim rows of (state_dim + 1) weights.
fn normal_equations_oracle(
    states: &[Vec<f64>],
    targets: &[Vec<f64>],
    lambda: f64,
) -> Vec<Vec<f64>> {
    let m = states.len();
    let p = states[0].len();
    let k = targets[0].len();
    let d = p + 1;
    let x = |i: usize, j: usize| if j == p { 1.0 } else { states[i][j] };

    let mut a = vec![vec![0.0; d]; d];
    for r in 0..d {
        for c in 0..d {
            a[r][c] = (0..m).map(|i| x(i, r) * x(i, c)).sum();
        }
    }
    for j in 0..p {
        a[j][j] += lambda;
    }
    let mut b = vec![vec![0.0; k]; d];
    for r in 0..d {
        for c in 0..k {
            b[r][c] = (0..m).map(|i| x(i, r) * targets[i][c]).sum();
        }
    }

    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).expect("finite"))
            .expect("nonempty range");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        assert!(diag.abs() > 1e-12, "oracle hit a singular pivot at column {col}");
        for c in 0..d {
            a[col][c] /= diag;
        }
        for c in 0..k {
            b[col][c] /= diag;
        }
        for r in 0..d {
            if r == col || a[r][col] == 0.0 {
                continue;
            }
            let factor = a[r][col];
            for c in 0..d {
                a[r][c] -= factor * a[col][c];
            }
            for c in 0..k {
                b[r][c] -= factor * b[col][c];
            }
        }
    }
    (0..k).map(|c| (0..d).map(|r| b[r][c]).collect()).collect()
}

#[test]
fn criterion_08_ridge_readout_matches_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let lambdas = [0.0, 1e-6, 1e-3, 0.1];
    let mut worst = 0.0f64;
    for system in 0..50usize {
        let rows = rng.random_range(30..=120);
        let state_dim = rng.random_range(2..=12);
        let target_dim = rng.random_range(1..=3);
        let lambda = lambdas[system % lambdas.len()];
        let states: Vec<Vec<f64>> = (0..rows)
            .map(|_| (0..state_dim).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let targets: Vec<Vec<f64>> = (0..rows)
            .map(|_| (0..target_dim).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();

        let model = train_readout(&states, &targets, lambda).expect("well-posed system");
        let oracle = normal_equations_oracle(&states, &targets, lambda);
        assert_eq!(model.weights.len(), oracle.len(), "system {system}: row count");
        for (r, (wrow, orow)) in model.weights.iter().zip(&oracle).enumerate() {
            for (c, (&w, &o)) in wrow.iter().zip(orow).enumerate() {
                let gap = (w - o).abs() / o.abs().max(1.0);
                assert!(
                    gap <= 1e-8,
                    "system {system} weight [{r}][{c}]: {w} vs oracle {o} (relative {gap:.3e})"
                );
                worst = worst.max(gap);
            }
        }
    }
    pass(8, "ridge oracle", format!("50 systems, worst relative weight gap {worst:.3e}"));
}

#[test]
fn criterion_09_voltage_regime_mapping() {
    for (mv, want) in [
        (960.0, Regime::Deterministic),
        (900.0, Regime::Transitional),
        (860.0, Regime::ResonantCandidate),
        (840.0, Regime::Unstable),
    ] {
        let got = classify_regime(mv);
        assert_eq!(got, want, "{mv} mV classified as {got:?}, want {want:?}");
    }
    pass(9, "regime mapping", "960/900/860/840 mV -> Deterministic/Transitional/ResonantCandidate/Unstable");
}

#[test]
fn criterion_10_thermal_pid_holds_setpoint() {
    let plant = ThermalParams::default();
    let ambient = 25.0;
    let dt = 0.5;
    let steps = 600; // 300 s
    let switch = 300; // disturbance step halfway through
    let judge_from = switch + 200; // 100 s after the last upset

    let mut worst = 0.0f64;
    let mut scenarios = 0;
    for &setpoint in &[40.0, 55.0, 70.0] {
        for &(before_w, after_w) in &[(5.0, 5.0), (15.0, 15.0), (5.0, 15.0), (15.0, 5.0)] {
            let mut pid = PidController::default();
            let mut temp = ambient;
            let mut held_within = 0.0f64;
            for i in 0..steps {
                let disturbance = if i < switch { before_w } else { after_w };
                let trim = pid.update(setpoint, temp, dt);
                let power = (disturbance + trim).max(0.0);
                temp = thermal::step(temp, power, ambient, &plant, dt);
                if i >= judge_from {
                    held_within = held_within.max((temp - setpoint).abs());
                }
            }
            assert!(
                held_within <= 2.0,
                "setpoint {setpoint} C with {before_w} -> {after_w} W disturbance settled only to +/- {held_within:.3} C"
            );
            worst = worst.max(held_within);
            scenarios += 1;
        }
    }
    pass(
        10,
        "thermal control",
        format!("{scenarios} setpoint/disturbance scenarios held within {worst:.3} C after settling"),
    );
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn criterion_11_end_to_end_sweep_replay() {
    let mock = serve_mock(MockConfig {
        time_scale: 100.0,
        restart_blackout_s: 0.5,
        ..MockConfig::default()
    })
    .await
    .expect("mock binds an ephemeral port");

    let mut plan = default_voltage_plan();
    plan.time_scale = 100.0;
    assert_eq!(plan.points.len(), 15, "the default voltage plan walks 15 points");

    let dir = tempfile::tempdir().expect("tempdir");
    let log_path = dir.path().join("sweep-voltage.jsonl");
    let endpoint = DeviceEndpoint::new(&mock.base_url);

    let started = Instant::now();
    let records = run_sweep(&plan, &endpoint, &Limits::default(), &log_path)
        .await
        .expect("sweep completes");
    let elapsed = started.elapsed();
    mock.shutdown().await;

    assert_eq!(records.len(), 15, "one record per plan point");
    assert!(elapsed < Duration::from_secs(60), "sweep took {elapsed:?}, budget is 60 s");

    let lines = read_log(&log_path).expect("log parses");
    let replay = replay_log(&lines).expect("replay succeeds");
    assert_eq!(replay.logged, records, "returned records must equal the logged ones");
    assert_eq!(replay.recomputed.len(), 15, "replay recomputes every point");
    for (recomputed, logged) in replay.recomputed.iter().zip(&replay.logged) {
        assert_eq!(recomputed, logged, "point {} must recompute identically", logged.index);
        let a = serde_json::to_string(recomputed).expect("serializable");
        let b = serde_json::to_string(logged).expect("serializable");
        assert_eq!(a, b, "point {}: serialized forms must be byte-identical", logged.index);
    }
    pass(
        11,
        "end-to-end sweep",
        format!("15 points in {elapsed:.1?}; replay reproduced every record byte-for-byte"),
    );
}

#[test]
fn criterion_12_efficiency_log_domain_reporting() {
    let small = energetics::EnergeticsParams::default();
    assert_eq!(small.n, 16);
    assert_eq!(small.k, small.k_prime, "matched prefactors cancel exactly");
    let exact = energetics::log2_eta(&small).expect("valid params");
    assert_eq!(exact, 14.0, "n=16, base 2: 16 - log2(log2(16)) must be exactly 14");

    let big = energetics::EnergeticsParams { n: 10_000, ..energetics::EnergeticsParams::default() };
    let report = energetics::efficiency_report(&big).expect("valid params");
    let literal = 10_000.0 - 10_000f64.log2().log2();
    assert_eq!(report.log2_eta, literal, "report carries the literal log-domain value");
    assert_eq!(report.headline_eta, 1e4, "the quoted headline ratio rides along");
    assert_eq!(report.headline_log2_eta, 1e4f64.log2());
    assert!(
        report.eta_linear.is_none(),
        "2^{:.0} cannot be materialized as a float and must stay in the log domain",
        report.log2_eta
    );
    assert!(
        report.note.contains("differ") && report.note.contains("side by side"),
        "the note must flag the discrepancy without reconciling it: {}",
        report.note
    );
    pass(
        12,
        "efficiency arithmetic",
        format!(
            "log2_eta(16) = 14 exactly; n=1e4 reports literal {:.3} beside headline {:.3}",
            report.log2_eta, report.headline_log2_eta
        ),
    );
}

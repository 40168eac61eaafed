use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::series::RateSeries;
use crate::spectral::SpectralEstimate;
use crate::timing::TimingStats;

/// Frequency bands feeding the per-window feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    /// Band-power integration ranges, hertz.
    pub bands_hz: Vec<(f64, f64)>,
    /// Band providing the phase signal for the coupling index.
    pub pac_phase_band_hz: (f64, f64),
    /// Band providing the amplitude envelope for the coupling index.
    pub pac_amp_band_hz: (f64, f64),
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            bands_hz: vec![(0.5, 2.0), (2.0, 3.0), (3.0, 5.0)],
            pac_phase_band_hz: (0.5, 5.0),
            pac_amp_band_hz: (5.0, 10.0),
        }
    }
}

/// Fixed-order per-window feature set. `to_vec` flattens to
/// [cv, entropy_density, hamming_mean, band powers.., pac].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub cv: f64,
    pub entropy_density: f64,
    pub hamming_mean: f64,
    pub band_powers: Vec<f64>,
    pub pac: f64,
}

impl FeatureVector {
    /// Flatten in the fixed feature order.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.len());
        v.push(self.cv);
        v.push(self.entropy_density);
        v.push(self.hamming_mean);
        v.extend_from_slice(&self.band_powers);
        v.push(self.pac);
        v
    }

    pub fn len(&self) -> usize {
        4 + self.band_powers.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn all_finite(&self) -> bool {
        self.to_vec().iter().all(|x| x.is_finite())
    }
}

/// Band-limited analytic signal: forward FFT, keep only positive-frequency
/// bins inside [lo, hi] (doubled, Nyquist undoubled), inverse FFT.
fn band_analytic(series: &RateSeries, lo_hz: f64, hi_hz: f64) -> Vec<Complex<f64>> {
    let n = series.counts.len();
    if n == 0 {
        return Vec::new();
    }
    let fs = series.fs_hz();
    let mean = series.counts.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> =
        series.counts.iter().map(|c| Complex::new(c - mean, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);

    let df = fs / n as f64;
    let half = n / 2;
    for (k, b) in buf.iter_mut().enumerate() {
        let positive = k >= 1 && (k < half || (k == half && n % 2 == 1));
        let nyquist = n % 2 == 0 && k == half;
        let f = k as f64 * df;
        if positive && f >= lo_hz && f <= hi_hz {
            *b *= 2.0;
        } else if nyquist && f >= lo_hz && f <= hi_hz {
            // kept as-is: the Nyquist bin is self-conjugate
        } else {
            *b = Complex::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for b in &mut buf {
        *b *= scale;
    }
    buf
}

/// Mean resultant length of amplitude-weighted phase: phase from one band's
/// analytic signal, amplitude envelope from another's. Zero when the
/// amplitude band carries nothing.
pub fn pac_index(series: &RateSeries, phase_band_hz: (f64, f64), amp_band_hz: (f64, f64)) -> f64 {
    let phase = band_analytic(series, phase_band_hz.0, phase_band_hz.1);
    let amp = band_analytic(series, amp_band_hz.0, amp_band_hz.1);
    let mut resultant = Complex::new(0.0, 0.0);
    let mut total = 0.0;
    for (p, a) in phase.iter().zip(&amp) {
        let w = a.norm();
        resultant += w * Complex::from_polar(1.0, p.arg());
        total += w;
    }
    if total == 0.0 {
        0.0
    } else {
        resultant.norm() / total
    }
}

/// Deterministic fixed-order feature encoding for one analysis window. The
/// rate series rides along because the coupling index needs time-domain
/// phase, which the density estimate cannot supply.
pub fn encode_features(
    stats: &TimingStats,
    est: &SpectralEstimate,
    hamming_mean: f64,
    series: &RateSeries,
    cfg: &FeatureConfig,
) -> FeatureVector {
    let band_powers: Vec<f64> =
        cfg.bands_hz.iter().map(|(lo, hi)| est.band_power(*lo, *hi)).collect();
    let pac = pac_index(series, cfg.pac_phase_band_hz, cfg.pac_amp_band_hz);
    FeatureVector {
        cv: stats.cv,
        entropy_density: stats.entropy_density,
        hamming_mean,
        band_powers,
        pac,
    }
}

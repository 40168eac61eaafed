use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::series::RateSeries;
use crate::MuseError;

/// Detection threshold for a rhythmic component, decibels over the
/// out-of-band median.
pub const DEFAULT_THRESHOLD_DB: f64 = 10.0;

/// Cap on reported significance so downstream JSON never sees infinities.
pub const SIGNIFICANCE_CLAMP_DB: f64 = 300.0;

/// Welch averaging parameters. The window is always a periodic Hann.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelchConfig {
    /// Samples per segment; must be even and at least 4.
    pub segment_len: usize,
    /// Fractional overlap between consecutive segments, in [0, 1).
    pub overlap: f64,
}

impl Default for WelchConfig {
    fn default() -> Self {
        WelchConfig { segment_len: 256, overlap: 0.5 }
    }
}

/// Location, height, and prominence of a spectral maximum. Prominence is
/// measured in decibels over the median of the other positive-frequency bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPeak {
    pub freq_hz: f64,
    pub density: f64,
    pub prominence_db: f64,
}

/// One-sided power spectral density estimate with its method metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub freqs_hz: Vec<f64>,
    /// Density in signal-units squared per hertz.
    pub psd: Vec<f64>,
    pub df_hz: f64,
    pub segment_len: usize,
    pub overlap: f64,
    pub window: String,
    /// Number of averaged segments.
    pub segments: usize,
    /// Global positive-frequency maximum, absent when the spectrum is all
    /// zero.
    pub peak: Option<SpectralPeak>,
}

impl SpectralEstimate {
    /// Integrated density over lo_hz <= f <= hi_hz.
    pub fn band_power(&self, lo_hz: f64, hi_hz: f64) -> f64 {
        self.freqs_hz
            .iter()
            .zip(&self.psd)
            .filter(|(f, _)| **f >= lo_hz && **f <= hi_hz)
            .map(|(_, p)| p * self.df_hz)
            .sum()
    }
}

/// Frequency band searched for a deliberate rate modulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeartbeatBand {
    pub lo_hz: f64,
    pub hi_hz: f64,
}

impl Default for HeartbeatBand {
    fn default() -> Self {
        HeartbeatBand { lo_hz: 0.5, hi_hz: 5.0 }
    }
}

/// An in-band spectral line and how far it stands above the out-of-band
/// median, in decibels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeartbeatDetection {
    pub freq_hz: f64,
    pub density: f64,
    pub significance_db: f64,
}

fn validate_welch(cfg: &WelchConfig) -> Result<(), MuseError> {
    if cfg.segment_len < 4 || cfg.segment_len % 2 != 0 {
        return Err(MuseError::BadConfig(format!(
            "segment_len must be even and >= 4, got {}",
            cfg.segment_len
        )));
    }
    if !(0.0..1.0).contains(&cfg.overlap) {
        return Err(MuseError::BadConfig(format!("overlap must be in [0, 1), got {}", cfg.overlap)));
    }
    Ok(())
}

fn db_over(peak: f64, floor: f64) -> f64 {
    if peak <= 0.0 {
        -SIGNIFICANCE_CLAMP_DB
    } else if floor <= 0.0 {
        SIGNIFICANCE_CLAMP_DB
    } else {
        (10.0 * (peak / floor).log10()).clamp(-SIGNIFICANCE_CLAMP_DB, SIGNIFICANCE_CLAMP_DB)
    }
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

/// Welch PSD: periodic Hann window, mean detrend per segment, one-sided
/// density normalization. The integral of the density over frequency
/// recovers the signal variance. Requires at least two segment lengths of
/// data.
pub fn psd_estimate(series: &RateSeries, cfg: &WelchConfig) -> Result<SpectralEstimate, MuseError> {
    validate_welch(cfg)?;
    let n = series.counts.len();
    let l = cfg.segment_len;
    if n < 2 * l {
        return Err(MuseError::SeriesTooShort { needed: 2 * l, got: n });
    }
    let fs = series.fs_hz();
    let hop = ((l as f64 * (1.0 - cfg.overlap)).round() as usize).max(1);

    let window: Vec<f64> = (0..l)
        .map(|i| 0.5 * (1.0 - (std::f64::consts::TAU * i as f64 / l as f64).cos()))
        .collect();
    let sum_w2: f64 = window.iter().map(|w| w * w).sum();

    let fft = FftPlanner::new().plan_fft_forward(l);
    let half = l / 2;
    let mut acc = vec![0.0f64; half + 1];
    let mut segments = 0usize;
    let mut buf = vec![Complex::new(0.0, 0.0); l];
    let mut start = 0usize;
    while start + l <= n {
        let seg = &series.counts[start..start + l];
        let mean = seg.iter().sum::<f64>() / l as f64;
        for (i, (s, w)) in seg.iter().zip(&window).enumerate() {
            buf[i] = Complex::new((s - mean) * w, 0.0);
        }
        fft.process(&mut buf);
        for (k, a) in acc.iter_mut().enumerate() {
            *a += buf[k].norm_sqr();
        }
        segments += 1;
        start += hop;
    }

    let df = fs / l as f64;
    let base = 1.0 / (fs * sum_w2 * segments as f64);
    let psd: Vec<f64> = acc
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let one_sided = if k == 0 || k == half { 1.0 } else { 2.0 };
            a * base * one_sided
        })
        .collect();
    let freqs_hz: Vec<f64> = (0..=half).map(|k| k as f64 * df).collect();

    // Global positive-frequency peak with prominence over the median of the
    // remaining positive-frequency bins.
    let mut peak: Option<(usize, f64)> = None;
    for k in 1..=half {
        if peak.map_or(true, |(_, d)| psd[k] > d) {
            peak = Some((k, psd[k]));
        }
    }
    let peak = peak.filter(|(_, d)| *d > 0.0).map(|(k, d)| {
        let mut rest: Vec<f64> =
            (1..=half).filter(|j| *j != k).map(|j| psd[j]).collect();
        rest.sort_by(|a, b| a.partial_cmp(b).expect("densities are finite"));
        let floor = if rest.is_empty() { 0.0 } else { median(&rest) };
        SpectralPeak { freq_hz: freqs_hz[k], density: d, prominence_db: db_over(d, floor) }
    });

    Ok(SpectralEstimate {
        freqs_hz,
        psd,
        df_hz: df,
        segment_len: l,
        overlap: cfg.overlap,
        window: "hann".into(),
        segments,
        peak,
    })
}

/// In-band peak and its significance over the out-of-band median, regardless
/// of threshold. `None` when the band holds no bins, no out-of-band floor
/// exists, or the band carries no power at all.
pub fn band_significance(est: &SpectralEstimate, band: HeartbeatBand) -> Option<HeartbeatDetection> {
    if !(band.lo_hz > 0.0 && band.hi_hz > band.lo_hz) {
        return None;
    }
    let mut best: Option<(f64, f64)> = None;
    let mut floor: Vec<f64> = Vec::new();
    for (f, p) in est.freqs_hz.iter().zip(&est.psd) {
        if *f <= 0.0 {
            continue;
        }
        if *f >= band.lo_hz && *f <= band.hi_hz {
            if best.map_or(true, |(_, d)| *p > d) {
                best = Some((*f, *p));
            }
        } else {
            floor.push(*p);
        }
    }
    let (freq_hz, density) = best?;
    if floor.is_empty() || density <= 0.0 {
        return None;
    }
    floor.sort_by(|a, b| a.partial_cmp(b).expect("densities are finite"));
    let significance_db = db_over(density, median(&floor));
    Some(HeartbeatDetection { freq_hz, density, significance_db })
}

/// Highest in-band peak, reported only when it clears `min_prominence_db`
/// over the out-of-band median.
pub fn detect_heartbeat(
    est: &SpectralEstimate,
    band: HeartbeatBand,
    min_prominence_db: f64,
) -> Option<HeartbeatDetection> {
    band_significance(est, band).filter(|d| d.significance_db >= min_prominence_db)
}

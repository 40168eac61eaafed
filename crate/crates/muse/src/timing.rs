//! Windowed inter-arrival statistics.
//!
//! Two entropy values ship side by side. `entropy_density` integrates a
//! density-normalized 20-bin histogram (bins integrate to 1 rather than sum
//! to 1, natural log, +1e-10 regularizer) so existing published numbers stay
//! comparable; it is sign-unconstrained. `entropy_shannon` is the corrected
//! probability-based value, always nonnegative.

use serde::{Deserialize, Serialize};

use crate::MuseError;

/// Histogram bin count used by both entropy definitions.
pub const ENTROPY_BINS: usize = 20;
/// Minimum timestamps per window (the "> 10" gate).
pub const MIN_WINDOW: usize = 11;
/// Default sliding-window length in timestamps.
pub const DEFAULT_WINDOW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingStats {
    /// Timestamps used (window tail), >= 11.
    pub n: usize,
    pub mean_s: f64,
    /// Population standard deviation of the deltas.
    pub std_s: f64,
    pub cv: f64,
    /// Density-histogram entropy, nats; may be negative.
    pub entropy_density: f64,
    /// Probability-histogram entropy, nats; always >= 0.
    pub entropy_shannon: f64,
}

/// Statistics over the last `window` timestamps of an ascending series.
pub fn interarrival_stats(times: &[f64], window: usize) -> Result<TimingStats, MuseError> {
    if window < MIN_WINDOW {
        return Err(MuseError::WindowTooSmall { min: MIN_WINDOW, got: window });
    }
    if times.len() < MIN_WINDOW {
        return Err(MuseError::InsufficientData { needed: MIN_WINDOW, got: times.len() });
    }
    let tail = &times[times.len().saturating_sub(window)..];
    for (i, pair) in tail.windows(2).enumerate() {
        if !(pair[1] > pair[0]) {
            return Err(MuseError::NonMonotonic { index: times.len() - tail.len() + i + 1 });
        }
    }
    let deltas: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let n = deltas.len() as f64;
    let mean = deltas.iter().sum::<f64>() / n;
    let var = deltas.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    let std = var.sqrt();

    let (counts, edges) = histogram(&deltas, ENTROPY_BINS);
    let total: u64 = counts.iter().sum();
    let mut entropy_density = 0.0;
    let mut entropy_shannon = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let width = edges[i + 1] - edges[i];
        let h = c as f64 / (total as f64 * width);
        entropy_density -= h * (h + 1e-10).ln();
        if c > 0 {
            let p = c as f64 / total as f64;
            entropy_shannon -= p * p.ln();
        }
    }

    Ok(TimingStats {
        n: tail.len(),
        mean_s: mean,
        std_s: std,
        cv: std / mean,
        entropy_density,
        entropy_shannon,
    })
}

/// Equal-width histogram with the edge conventions of the common array
/// libraries: edges linearly spaced with the last edge pinned to the max,
/// all bins half-open except the last (closed), degenerate ranges widened
/// by +/- 0.5, and index arithmetic corrected against the edge array.
pub fn histogram(xs: &[f64], bins: usize) -> (Vec<u64>, Vec<f64>) {
    assert!(bins >= 1 && !xs.is_empty());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in xs {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let step = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..=bins).map(|i| lo + step * i as f64).collect();
    edges[bins] = hi;

    let norm = bins as f64 / (hi - lo);
    let mut counts = vec![0u64; bins];
    for &x in xs {
        let mut idx = ((x - lo) * norm) as usize;
        if idx >= bins {
            idx = bins - 1;
        }
        // Float index arithmetic can land one bin off near an edge.
        if x < edges[idx] {
            idx -= 1;
        } else if idx != bins - 1 && x >= edges[idx + 1] {
            idx += 1;
        }
        counts[idx] += 1;
    }
    (counts, edges)
}

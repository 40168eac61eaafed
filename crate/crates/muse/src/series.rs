use serde::{Deserialize, Serialize};
use substrate::ShareEvent;

use crate::MuseError;

/// Default bin width for turning share timestamps into a rate series.
pub const DEFAULT_BIN_S: f64 = 0.05;

/// Uniformly binned event-count series, the input format for spectral
/// analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSeries {
    /// Left edge of the first bin, seconds.
    pub t0_s: f64,
    /// Bin width, seconds.
    pub bin_s: f64,
    /// Events per bin.
    pub counts: Vec<f64>,
}

impl RateSeries {
    /// Sampling frequency implied by the bin width.
    pub fn fs_hz(&self) -> f64 {
        1.0 / self.bin_s
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Bin share events into counts of width `bin_s`, spanning from the earliest
/// event to the latest. Every event lands in exactly one bin, so the counts
/// sum to the event count; no input ordering is assumed. Empty input gives an
/// empty series.
pub fn rate_series(events: &[ShareEvent], bin_s: f64) -> Result<RateSeries, MuseError> {
    if !(bin_s > 0.0) {
        return Err(MuseError::BadConfig(format!("bin width must be > 0, got {bin_s}")));
    }
    if events.is_empty() {
        return Ok(RateSeries { t0_s: 0.0, bin_s, counts: Vec::new() });
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for e in events {
        lo = lo.min(e.t);
        hi = hi.max(e.t);
    }
    let n_bins = ((hi - lo) / bin_s).floor() as usize + 1;
    let mut counts = vec![0.0; n_bins];
    for e in events {
        let idx = (((e.t - lo) / bin_s) as usize).min(n_bins - 1);
        counts[idx] += 1.0;
    }
    Ok(RateSeries { t0_s: lo, bin_s, counts })
}

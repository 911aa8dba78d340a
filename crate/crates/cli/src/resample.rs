use lrdkit::UniformSeries;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::ingest::RawRecording;

/// Artifact filter applied before resampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CleaningSettings {
    pub rr_min_ms: f64,
    pub rr_max_ms: f64,
    /// Largest tolerated fraction of dropped intervals.
    pub max_drop_fraction: f64,
    pub min_valid: usize,
}

impl Default for CleaningSettings {
    fn default() -> Self {
        Self { rr_min_ms: 300.0, rr_max_ms: 2000.0, max_drop_fraction: 0.5, min_valid: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResampleReport {
    pub n_intervals: usize,
    pub n_dropped: usize,
    /// Source lines of the dropped intervals.
    pub dropped_lines: Vec<usize>,
    pub rate_hz: f64,
    pub n_samples: usize,
}

/// Instantaneous heart rate on a uniform grid.
///
/// Each interval yields `60000 / rr` beats per minute, stamped at the beat
/// that closes it. Beat times accumulate every recorded interval, dropped or
/// not, so the time axis stays in elapsed seconds. The retained samples are
/// linearly interpolated at `rate_hz` from the first to the last retained beat.
pub fn clean_and_resample(
    rec: &RawRecording,
    rate_hz: f64,
    settings: &CleaningSettings,
) -> CliResult<(UniformSeries, ResampleReport)> {
    if !(rate_hz > 0.0 && rate_hz.is_finite()) {
        return Err(CliError::Usage(format!("resampling rate must be positive, got {rate_hz}")));
    }
    let mut times = Vec::with_capacity(rec.rr_ms.len());
    let mut bpm = Vec::with_capacity(rec.rr_ms.len());
    let mut dropped_lines = Vec::new();
    let mut clock = 0.0;
    for (i, &rr) in rec.rr_ms.iter().enumerate() {
        clock += rr / 1000.0;
        if (settings.rr_min_ms..=settings.rr_max_ms).contains(&rr) {
            times.push(clock);
            bpm.push(60_000.0 / rr);
        } else {
            dropped_lines.push(rec.lines.get(i).copied().unwrap_or(i + 1));
        }
    }
    let n = rec.rr_ms.len();
    let dropped = dropped_lines.len();
    if dropped as f64 > settings.max_drop_fraction * n as f64 {
        return Err(CliError::Quality(format!(
            "{}: {dropped} of {n} intervals fall outside [{}, {}] ms",
            rec.subject, settings.rr_min_ms, settings.rr_max_ms
        )));
    }
    if bpm.len() < settings.min_valid.max(2) {
        return Err(CliError::Quality(format!(
            "{}: only {} valid intervals, at least {} are required",
            rec.subject,
            bpm.len(),
            settings.min_valid.max(2)
        )));
    }
    let step = 1.0 / rate_hz;
    let (start, end) = (times[0], times[times.len() - 1]);
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    if count < 2 {
        return Err(CliError::Quality(format!("{}: recording shorter than one resampling step", rec.subject)));
    }
    let mut values = Vec::with_capacity(count);
    let mut j = 0;
    for k in 0..count {
        let t = start + k as f64 * step;
        while j + 2 < times.len() && times[j + 1] < t {
            j += 1;
        }
        let (ta, tb) = (times[j], times[j + 1]);
        let w = ((t - ta) / (tb - ta)).clamp(0.0, 1.0);
        values.push(bpm[j] + w * (bpm[j + 1] - bpm[j]));
    }
    if dropped > 0 {
        log::info!("{}: dropped {dropped} of {n} intervals", rec.subject);
    }
    let report = ResampleReport { n_intervals: n, n_dropped: dropped, dropped_lines, rate_hz, n_samples: count };
    Ok((UniformSeries::new(values, step, start)?, report))
}

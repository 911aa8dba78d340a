//! Detrended fluctuation analysis.
//!
//! The series is centred and summed into a path, cut into non-overlapping
//! windows of length `w` (the incomplete tail is discarded), a least-squares
//! line is removed from each window, and `F(w)` is the root mean square of
//! all residuals pooled together. The Hurst estimate is the slope of
//! `log F(w)` against `log w`.

use serde::{Deserialize, Serialize};

use crate::inference::regression::loglog_fit;
use crate::inference::t_quantile;
use crate::{Error, EstimateMethod, FractalEstimate, Result, UniformSeries};

/// Smallest admissible window length.
pub const MIN_WINDOW: usize = 4;

/// DFA function values on a grid of window lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfaProfile {
    pub window_lengths: Vec<usize>,
    pub fluctuation: Vec<f64>,
    pub n_samples: usize,
}

/// Ten geometrically spaced window lengths from 4 to `n / 8`, rounded and
/// deduplicated.
pub fn default_windows(n: usize) -> Vec<usize> {
    geometric_windows(MIN_WINDOW, n / 8, 10)
}

/// `count` geometric lengths in `[lo, hi]`, rounded and deduplicated.
pub fn geometric_windows(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if hi < lo || count == 0 {
        return Vec::new();
    }
    if count == 1 || hi == lo {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln() / (count - 1) as f64;
    let mut out: Vec<usize> = (0..count)
        .map(|i| ((lo as f64) * (ratio * i as f64).exp()).round() as usize)
        .map(|w| w.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

/// Residual sum of squares of a least-squares line through `y` against `0..len`.
fn detrended_rss(y: &[f64]) -> f64 {
    let w = y.len() as f64;
    let xm = (w - 1.0) / 2.0;
    let ym = y.iter().sum::<f64>() / w;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (i, v) in y.iter().enumerate() {
        let dx = i as f64 - xm;
        sxx += dx * dx;
        sxy += dx * (v - ym);
    }
    let b = sxy / sxx;
    y.iter()
        .enumerate()
        .map(|(i, v)| {
            let r = v - ym - b * (i as f64 - xm);
            r * r
        })
        .sum()
}

pub fn dfa_profile(series: &UniformSeries, windows: &[usize]) -> Result<DfaProfile> {
    let n = series.len();
    if n < 16 {
        return Err(Error::param(format!("DFA needs at least 16 samples, got {n}")));
    }
    if windows.is_empty() {
        return Err(Error::param("DFA needs at least one window length"));
    }
    if windows.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::param("window lengths must be strictly increasing"));
    }
    if let Some(w) = windows.iter().find(|&&w| w < MIN_WINDOW || w > n / 4) {
        return Err(Error::param(format!("window length {w} outside [{MIN_WINDOW}, {}] for n = {n}", n / 4)));
    }
    let mean = series.mean();
    let mut acc = 0.0;
    let path: Vec<f64> = series
        .values()
        .iter()
        .map(|v| {
            acc += v - mean;
            acc
        })
        .collect();
    let fluctuation = windows
        .iter()
        .map(|&w| {
            let blocks = n / w;
            let rss: f64 = path[..blocks * w].chunks_exact(w).map(detrended_rss).sum();
            (rss / (blocks * w) as f64).sqrt()
        })
        .collect();
    Ok(DfaProfile { window_lengths: windows.to_vec(), fluctuation, n_samples: n })
}

/// Ĥ_DFA: ordinary least-squares slope of `log F(w)` on `log w`.
pub fn estimate_h_dfa(profile: &DfaProfile) -> Result<FractalEstimate> {
    if profile.window_lengths.len() < 3 {
        return Err(Error::param("DFA regression needs at least 3 window lengths"));
    }
    if profile.fluctuation.iter().any(|f| !(*f > 0.0)) {
        return Err(Error::Degenerate("DFA function vanishes at some window length".into()));
    }
    let w: Vec<f64> = profile.window_lengths.iter().map(|&w| w as f64).collect();
    let fit = loglog_fit(&w, &profile.fluctuation, None)?;
    let dof = w.len() as f64 - 2.0;
    Ok(FractalEstimate {
        h_hat: fit.slope,
        slope: fit.slope,
        intercept: fit.intercept,
        stderr: fit.stderr_slope,
        ci_halfwidth: t_quantile(0.975, dof) * fit.stderr_slope,
        method: EstimateMethod::Dfa,
        gof: None,
    })
}

/// [`dfa_profile`] on [`default_windows`] followed by [`estimate_h_dfa`].
pub fn estimate_dfa(series: &UniformSeries) -> Result<(DfaProfile, FractalEstimate)> {
    let profile = dfa_profile(series, &default_windows(series.len()))?;
    let est = estimate_h_dfa(&profile)?;
    Ok((profile, est))
}

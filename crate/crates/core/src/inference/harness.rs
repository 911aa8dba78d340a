use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tests::mean_test;
use crate::dfa::{default_windows, dfa_profile, estimate_h_dfa};
use crate::rng::derive_seed;
use crate::synthesis::FgnSampler;
use crate::wavelet::{default_scales, estimate_h_wavelet, MotherWavelet, Regression, SpectrumAnalyzer, SpectrumMode};
use crate::{Error, Result};

/// Estimator configuration for the Monte Carlo comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HarnessSettings {
    /// DFA window lengths; `None` uses [`default_windows`].
    pub dfa_windows: Option<Vec<usize>>,
    /// Wavelet scales; `None` uses [`default_scales`].
    pub scales: Option<Vec<f64>>,
    pub regression: Regression,
    pub wavelet: MotherWavelet,
}

impl Default for HarnessSettings {
    fn default() -> Self {
        Self { dfa_windows: None, scales: None, regression: Regression::Ols, wavelet: MotherWavelet::default() }
    }
}

/// Summary of both estimators at one true `H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRow {
    pub h_true: f64,
    pub mean_dfa: f64,
    pub mean_wav: f64,
    pub abs_bias_dfa: f64,
    pub abs_bias_wav: f64,
    pub p_val_dfa: f64,
    pub p_val_wav: f64,
    pub rmse_dfa: f64,
    pub rmse_wav: f64,
    pub failed_dfa: usize,
    pub failed_wav: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub rows: Vec<MonteCarloRow>,
}

struct Summary {
    mean: f64,
    abs_bias: f64,
    p_value: f64,
    rmse: f64,
    failed: usize,
}

fn summarize(estimates: &[Option<f64>], h: f64) -> Summary {
    let ok: Vec<f64> = estimates.iter().flatten().copied().collect();
    let failed = estimates.len() - ok.len();
    if ok.is_empty() {
        return Summary { mean: f64::NAN, abs_bias: f64::NAN, p_value: f64::NAN, rmse: f64::NAN, failed };
    }
    let mean = ok.iter().sum::<f64>() / ok.len() as f64;
    let rmse = (ok.iter().map(|e| (e - h).powi(2)).sum::<f64>() / ok.len() as f64).sqrt();
    let p_value = mean_test(&ok, h).unwrap_or(f64::NAN);
    Summary { mean, abs_bias: (mean - h).abs(), p_value, rmse, failed }
}

/// DFA versus wavelet (stationary mode) on FGN paths, default estimator settings.
pub fn table1_harness(h_values: &[f64], n: usize, reps: usize, seed: u64) -> Result<MonteCarloReport> {
    table1_harness_with(h_values, n, reps, seed, &HarnessSettings::default())
}

/// For each `H`, draws `reps` FGN paths of length `n` and records the bias,
/// root mean squared error and a t-test p-value of both estimators. Failed
/// replicates are counted and left out of the statistics.
pub fn table1_harness_with(
    h_values: &[f64],
    n: usize,
    reps: usize,
    seed: u64,
    settings: &HarnessSettings,
) -> Result<MonteCarloReport> {
    if reps < 10 {
        return Err(Error::param("the harness needs at least 10 replicates"));
    }
    let windows = settings.dfa_windows.clone().unwrap_or_else(|| default_windows(n));
    let scales = match &settings.scales {
        Some(s) => s.clone(),
        None => default_scales(n, 1.0)?,
    };
    let analyzer = SpectrumAnalyzer::new(settings.wavelet, &scales, 1.0, SpectrumMode::Lrd)?;
    let mut rows = Vec::with_capacity(h_values.len());
    for (hi, &h) in h_values.iter().enumerate() {
        let sampler = FgnSampler::new(h, 1.0, n)?;
        let draws: Vec<(Option<f64>, Option<f64>)> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let path = sampler.sample(derive_seed(seed, hi as u64, rep as u64));
                let dfa = dfa_profile(&path, &windows).and_then(|p| estimate_h_dfa(&p));
                let wav = analyzer.spectrum(&path).and_then(|s| estimate_h_wavelet(&s, settings.regression));
                (dfa.ok().map(|e| e.h_hat), wav.ok().map(|e| e.h_hat))
            })
            .collect();
        let dfa: Vec<Option<f64>> = draws.iter().map(|d| d.0).collect();
        let wav: Vec<Option<f64>> = draws.iter().map(|d| d.1).collect();
        let (d, w) = (summarize(&dfa, h), summarize(&wav, h));
        if d.failed + w.failed > 0 {
            log::warn!("H = {h}: {} DFA and {} wavelet replicates failed", d.failed, w.failed);
        }
        rows.push(MonteCarloRow {
            h_true: h,
            mean_dfa: d.mean,
            mean_wav: w.mean,
            abs_bias_dfa: d.abs_bias,
            abs_bias_wav: w.abs_bias,
            p_val_dfa: d.p_value,
            p_val_wav: w.p_value,
            rmse_dfa: d.rmse,
            rmse_wav: w.rmse,
            failed_dfa: d.failed,
            failed_wav: w.failed,
        });
    }
    Ok(MonteCarloReport { n, reps, seed, rows })
}

const HEADER: [&str; 9] = [
    "H",
    "|bias| DFA",
    "|bias| WAV",
    "p-val DFA",
    "p-val WAV",
    "sqrtMSE DFA",
    "sqrtMSE WAV",
    "failed DFA",
    "failed WAV",
];

impl MonteCarloReport {
    fn cells(row: &MonteCarloRow) -> [String; 9] {
        [
            format!("{:.2}", row.h_true),
            format!("{:.4}", row.abs_bias_dfa),
            format!("{:.4}", row.abs_bias_wav),
            format!("{:.3e}", row.p_val_dfa),
            format!("{:.3e}", row.p_val_wav),
            format!("{:.4}", row.rmse_dfa),
            format!("{:.4}", row.rmse_wav),
            row.failed_dfa.to_string(),
            row.failed_wav.to_string(),
        ]
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut out = format!("FGN paths: N = {}, {} replicates, seed {}\n", self.n, self.reps, self.seed);
        let rows: Vec<[String; 9]> = self.rows.iter().map(Self::cells).collect();
        let widths: Vec<usize> =
            (0..9).map(|c| rows.iter().map(|r| r[c].len()).chain([HEADER[c].len()]).max().unwrap_or(0)).collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            parts.join("  ")
        };
        let header: Vec<String> = HEADER.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "{}", line(&header));
        for r in &rows {
            let _ = writeln!(out, "{}", line(r));
        }
        out
    }

    /// CSV with full-precision numbers, in the same column order as the text table.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("h,abs_bias_dfa,abs_bias_wav,p_val_dfa,p_val_wav,rmse_dfa,rmse_wav,failed_dfa,failed_wav\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:e},{:e},{:e},{:e},{:e},{:e},{},{}",
                r.h_true,
                r.abs_bias_dfa,
                r.abs_bias_wav,
                r.p_val_dfa,
                r.p_val_wav,
                r.rmse_dfa,
                r.rmse_wav,
                r.failed_dfa,
                r.failed_wav
            );
        }
        out
    }
}

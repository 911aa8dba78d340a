//! The per-subject pipeline: segmentation into race phases followed by DFA
//! and wavelet estimates on every phase and on the whole series.

use lrdkit::changepoint::{select_k, PenaltyScan, Segmentation};
use lrdkit::dfa::{default_windows, dfa_profile, estimate_h_dfa, DfaProfile};
use lrdkit::inference::{anova_f, SampleComparison};
use lrdkit::synthesis::aggregate;
use lrdkit::wavelet::{
    band_scales, estimate_h_wavelet, geometric_scales, goodness_of_fit, ScaleSpectrum, SpectrumAnalyzer, SpectrumMode,
};
use lrdkit::{FractalEstimate, UniformSeries};
use serde::{Deserialize, Serialize};

use crate::config::AnalysisConfig;
use crate::error::CliResult;
use crate::resample::ResampleReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Below this many samples per series the estimates are flagged as unreliable.
pub const MIN_RELIABLE_SAMPLES: usize = 1000;

pub const PHASE_ORDER: [&str; 3] = ["beginning", "middle", "end"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfaResult {
    pub profile: DfaProfile,
    pub estimate: FractalEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletResult {
    pub spectrum: ScaleSpectrum,
    pub estimate: FractalEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub name: String,
    /// Sample range `[lo, hi)` within the analysed series.
    pub lo: usize,
    pub hi: usize,
    /// Indices of the segments merged into this phase.
    pub segments: Vec<usize>,
    pub mean: f64,
    pub std: f64,
    pub dfa: Option<DfaResult>,
    /// Band-restricted estimate on the aggregated phase, with its GOF test.
    pub wavelet: Option<WaveletResult>,
    /// Stationary long-range-dependence estimate on the phase itself.
    pub wavelet_lrd: Option<WaveletResult>,
    pub failures: Vec<StageFailure>,
}

impl PhaseReport {
    pub fn failed(&self) -> bool {
        self.dfa.is_none() && self.wavelet.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub subject: String,
    pub config: AnalysisConfig,
    pub n_samples: usize,
    pub delta: f64,
    pub t0: f64,
    pub warnings: Vec<String>,
    pub resampling: Option<ResampleReport>,
    pub scan: Option<PenaltyScan>,
    pub segmentation: Option<Segmentation>,
    pub failures: Vec<StageFailure>,
    pub overall: PhaseReport,
    pub phases: Vec<PhaseReport>,
}

impl AnalysisReport {
    pub fn phase(&self, name: &str) -> Option<&PhaseReport> {
        self.phases.iter().find(|p| p.name == name)
    }
}

/// Groups segments into named phases. One segment is the whole race; two are
/// a beginning and an end; with three or more, the first and last segments
/// are the beginning and end and everything between is merged into the middle.
pub fn phase_groups(k: usize) -> Vec<(&'static str, Vec<usize>)> {
    match k {
        0 => Vec::new(),
        1 => vec![("whole", vec![0])],
        2 => vec![("beginning", vec![0]), ("end", vec![1])],
        _ => vec![("beginning", vec![0]), ("middle", (1..k - 1).collect()), ("end", vec![k - 1])],
    }
}

fn record<T>(failures: &mut Vec<StageFailure>, stage: &str, r: lrdkit::Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            failures.push(StageFailure { stage: stage.into(), error: e.to_string() });
            None
        }
    }
}

fn analyze_phase(
    series: &UniformSeries,
    name: &str,
    lo: usize,
    hi: usize,
    segments: Vec<usize>,
    cfg: &AnalysisConfig,
) -> PhaseReport {
    let mut failures = Vec::new();
    let part = record(&mut failures, "slice", series.slice(lo, hi));
    let (mut dfa, mut wavelet, mut wavelet_lrd) = (None, None, None);
    if let Some(part) = &part {
        let n = part.len();
        let delta = part.delta();
        let windows = cfg.dfa_windows.clone().unwrap_or_else(|| default_windows(n));
        dfa = record(
            &mut failures,
            "dfa",
            dfa_profile(part, &windows)
                .and_then(|profile| estimate_h_dfa(&profile).map(|estimate| DfaResult { profile, estimate })),
        );
        let [omega0, omega1] = cfg.band;
        let band = (|| {
            let scales = band_scales(&cfg.wavelet, omega0, omega1, delta, cfg.band_scale_count)?;
            let mode = SpectrumMode::Band { omega0, omega1 };
            let spectrum = SpectrumAnalyzer::new(cfg.wavelet, &scales, delta, mode)?.spectrum(&aggregate(part))?;
            let mut estimate = estimate_h_wavelet(&spectrum, cfg.regression)?;
            estimate.gof = Some(goodness_of_fit(&spectrum, &estimate, cfg.gof_level)?);
            Ok(WaveletResult { spectrum, estimate })
        })();
        wavelet = record(&mut failures, "wavelet_band", band);
        let lrd = (|| {
            let hi_scale = (n as f64).powf(0.4) * delta;
            let scales = geometric_scales(4.0 * delta, hi_scale.max(4.0 * delta), cfg.scale_count);
            let spectrum = SpectrumAnalyzer::new(cfg.wavelet, &scales, delta, SpectrumMode::Lrd)?.spectrum(part)?;
            let estimate = estimate_h_wavelet(&spectrum, cfg.regression)?;
            Ok(WaveletResult { spectrum, estimate })
        })();
        wavelet_lrd = record(&mut failures, "wavelet_lrd", lrd);
    }
    let (mean, std) = part.as_ref().map_or((f64::NAN, f64::NAN), |p| (p.mean(), p.std()));
    PhaseReport { name: name.into(), lo, hi, segments, mean, std, dfa, wavelet, wavelet_lrd, failures }
}

/// Runs the full pipeline on one subject. Stage errors are recorded in the
/// report rather than aborting it.
pub fn analyze(
    subject: &str,
    series: &UniformSeries,
    resampling: Option<ResampleReport>,
    cfg: &AnalysisConfig,
) -> CliResult<AnalysisReport> {
    cfg.validate()?;
    let n = series.len();
    let mut warnings = Vec::new();
    if n < MIN_RELIABLE_SAMPLES {
        warnings.push(format!("series has {n} samples; per-phase estimates need about {MIN_RELIABLE_SAMPLES} or more"));
    }
    let mut failures = Vec::new();
    let scan = record(&mut failures, "changepoint", select_k(series, cfg.k_max, &cfg.changepoint));
    let segmentation = scan.as_ref().map(|s| s.selected_segmentation().clone());
    let phases = segmentation
        .as_ref()
        .map(|seg| {
            phase_groups(seg.k)
                .into_iter()
                .map(|(name, idx)| {
                    let lo = seg.segments[idx[0]].lo;
                    let hi = seg.segments[*idx.last().unwrap()].hi;
                    analyze_phase(series, name, lo, hi, idx, cfg)
                })
                .collect()
        })
        .unwrap_or_default();
    let overall = analyze_phase(series, "overall", 0, n, Vec::new(), cfg);
    for p in std::iter::once(&overall).chain(&phases) {
        for f in &p.failures {
            log::warn!("{subject}: phase {} stage {} failed: {}", p.name, f.stage, f.error);
        }
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        subject: subject.into(),
        config: cfg.clone(),
        n_samples: n,
        delta: series.delta(),
        t0: series.t0(),
        warnings,
        resampling,
        scan,
        segmentation,
        failures,
        overall,
        phases,
    })
}

/// One-way ANOVA of per-phase estimates across subjects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortComparison {
    pub estimator: String,
    /// Subjects with an estimate for every phase.
    pub subjects: Vec<String>,
    pub group_means: Vec<f64>,
    pub comparison: Option<SampleComparison>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortReport {
    pub schema_version: u32,
    pub phases: Vec<String>,
    pub comparisons: Vec<CohortComparison>,
}

fn compare(reports: &[AnalysisReport], estimator: &str, pick: fn(&PhaseReport) -> Option<f64>) -> CohortComparison {
    let mut subjects = Vec::new();
    let mut groups = vec![Vec::new(); PHASE_ORDER.len()];
    for r in reports {
        let hs: Option<Vec<f64>> = PHASE_ORDER.iter().map(|p| r.phase(p).and_then(pick)).collect();
        if let Some(hs) = hs {
            subjects.push(r.subject.clone());
            groups.iter_mut().zip(hs).for_each(|(g, h)| g.push(h));
        }
    }
    let group_means = groups.iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect();
    let labels: Vec<String> = PHASE_ORDER.iter().map(|s| s.to_string()).collect();
    let (comparison, error) = match anova_f(&groups, Some(&labels)) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    CohortComparison { estimator: estimator.into(), subjects, group_means, comparison, error }
}

/// Compares the beginning, middle and end estimates over a cohort.
pub fn compare_cohort(reports: &[AnalysisReport]) -> CohortReport {
    CohortReport {
        schema_version: SCHEMA_VERSION,
        phases: PHASE_ORDER.iter().map(|s| s.to_string()).collect(),
        comparisons: vec![
            compare(reports, "wavelet_band", |p| p.wavelet.as_ref().map(|w| w.estimate.h_hat)),
            compare(reports, "dfa", |p| p.dfa.as_ref().map(|d| d.estimate.h_hat)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lrdkit::synthesis::FgnSampler;

    #[test]
    fn phase_mapping() {
        assert_eq!(phase_groups(1), vec![("whole", vec![0])]);
        assert_eq!(phase_groups(3)[1], ("middle", vec![1]));
        assert_eq!(phase_groups(4)[1], ("middle", vec![1, 2]));
        assert_eq!(phase_groups(4)[2], ("end", vec![3]));
    }

    #[test]
    fn short_series_warns_but_reports() {
        let s = FgnSampler::new(0.7, 1.0, 300).unwrap().sample(1);
        let r = analyze("s", &s, None, &AnalysisConfig::default()).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.overall.hi, 300);
        assert!(r.segmentation.is_some());
    }

    #[test]
    fn stage_errors_become_phase_failures() {
        let s = FgnSampler::new(0.7, 1.0, 60).unwrap().sample(2);
        let r = analyze("s", &s, None, &AnalysisConfig::default()).unwrap();
        assert!(r.overall.failures.iter().any(|f| f.stage == "wavelet_band"));
    }
}

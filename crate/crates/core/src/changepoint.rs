//! Exact segmentation of a series into pieces of constant mean and variance.
//!
//! Each segment `[lo, hi)` is scored by the Gaussian contrast
//! `(hi - lo) · log σ̂²`, with `σ̂` the segment's population standard
//! deviation floored at a small fraction of the whole-series spread. The
//! optimal segmentation into `K` pieces is found by dynamic programming over
//! all admissible change instants, and `K` itself is chosen by an elbow rule
//! on the curve `K ↦ Ĝ_K`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, UniformSeries};

/// Tuning knobs for detection and selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChangepointConfig {
    /// Minimum number of samples per segment.
    pub min_seg: usize,
    /// `σ_floor` as a multiple of the whole-series standard deviation.
    pub sigma_floor_rel: f64,
    /// How much larger `l_i` must be than every later `|l_j|`.
    pub elbow_ratio: f64,
    /// How much larger the gain `β_i` must be than the next gain `β_{i+1}`.
    pub min_gain_ratio: f64,
    /// Keep every `downsample`-th sample before running the search.
    pub downsample: usize,
}

impl Default for ChangepointConfig {
    fn default() -> Self {
        Self { min_seg: 20, sigma_floor_rel: 1e-6, elbow_ratio: 5.0, min_gain_ratio: 2.0, downsample: 1 }
    }
}

impl ChangepointConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_seg < 2 {
            return Err(Error::param("min_seg must be at least 2"));
        }
        if !(self.sigma_floor_rel > 0.0 && self.sigma_floor_rel.is_finite()) {
            return Err(Error::param("sigma_floor_rel must be positive"));
        }
        if !(self.elbow_ratio >= 1.0 && self.elbow_ratio.is_finite()) {
            return Err(Error::param("elbow_ratio must be at least 1"));
        }
        if !(self.min_gain_ratio >= 1.0 && self.min_gain_ratio.is_finite()) {
            return Err(Error::param("min_gain_ratio must be at least 1"));
        }
        if self.downsample == 0 {
            return Err(Error::param("downsample factor must be at least 1"));
        }
        Ok(())
    }
}

/// One fitted segment `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentFit {
    pub lo: usize,
    pub hi: usize,
    pub mean: f64,
    pub std: f64,
}

/// Segment estimates together with the segment's contrast value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentContrast {
    pub mean: f64,
    pub std: f64,
    pub contrast: f64,
}

/// Optimal segmentation into `k` pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    /// Interior change instants `τ_1 < … < τ_{K-1}`; segment `j` is `[τ_j, τ_{j+1})`.
    pub taus: Vec<usize>,
    pub segments: Vec<SegmentFit>,
    pub contrast: f64,
}

/// Contrast curve over `K = 1..=k_max` and the elbow-rule decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyScan {
    pub ks: Vec<usize>,
    pub contrasts: Vec<f64>,
    /// `β_i = (Ĝ_{K_i} - Ĝ_{K_{i+1}}) / (K_{i+1} - K_i)`.
    pub betas: Vec<f64>,
    /// `l_i = β_i - β_{i+1}`.
    pub ls: Vec<f64>,
    pub selected: usize,
    pub segmentations: Vec<Segmentation>,
}

impl PenaltyScan {
    pub fn selected_segmentation(&self) -> &Segmentation {
        &self.segmentations[self.selected - 1]
    }
}

/// Prefix sums of the centred series, which keep `Σy² - (Σy)²/L` accurate.
struct Moments {
    center: f64,
    s1: Vec<f64>,
    s2: Vec<f64>,
    floor2: f64,
}

impl Moments {
    fn new(values: &[f64], sigma_floor_rel: f64) -> Self {
        let n = values.len() as f64;
        let center = values.iter().sum::<f64>() / n;
        let mut s1 = Vec::with_capacity(values.len() + 1);
        let mut s2 = Vec::with_capacity(values.len() + 1);
        let (mut a, mut b) = (0.0, 0.0);
        s1.push(0.0);
        s2.push(0.0);
        for v in values {
            let d = v - center;
            a += d;
            b += d * d;
            s1.push(a);
            s2.push(b);
        }
        let std = (b / n).sqrt();
        let spread = if std > 0.0 { std } else { center.abs().max(1.0) };
        let floor = sigma_floor_rel * spread;
        Self { center, s1, s2, floor2: floor * floor }
    }

    /// (centred mean, floored variance) of `[lo, hi)`.
    #[inline]
    fn fit(&self, lo: usize, hi: usize) -> (f64, f64) {
        let len = (hi - lo) as f64;
        let m = (self.s1[hi] - self.s1[lo]) / len;
        let var = (self.s2[hi] - self.s2[lo]) / len - m * m;
        (m, var.max(self.floor2))
    }

    #[inline]
    fn cost(&self, lo: usize, hi: usize) -> f64 {
        (hi - lo) as f64 * self.fit(lo, hi).1.ln()
    }

    fn segment(&self, lo: usize, hi: usize) -> SegmentFit {
        let (m, var) = self.fit(lo, hi);
        SegmentFit { lo, hi, mean: m + self.center, std: var.sqrt() }
    }
}

/// Mean, floored standard deviation and contrast of samples `[lo, hi)`.
///
/// The floor is `sigma_floor_rel` times the standard deviation of the whole
/// series, so results depend on the series and not only on the slice.
pub fn segment_contrast(
    series: &UniformSeries,
    lo: usize,
    hi: usize,
    config: &ChangepointConfig,
) -> Result<SegmentContrast> {
    config.validate()?;
    if hi > series.len() || lo >= hi || hi - lo < config.min_seg {
        return Err(Error::Constraint(format!(
            "segment [{lo}, {hi}) is shorter than min_seg = {} or out of range",
            config.min_seg
        )));
    }
    let moments = Moments::new(series.values(), config.sigma_floor_rel);
    let fit = moments.segment(lo, hi);
    Ok(SegmentContrast { mean: fit.mean, std: fit.std, contrast: moments.cost(lo, hi) })
}

/// Dynamic-programming tables for every `K ≤ k_max`.
struct DpTables {
    n: usize,
    /// Start of the last piece in the optimum for `(k, j)`.
    arg: Vec<Vec<u32>>,
}

#[allow(clippy::needless_range_loop)]
fn run_dp(moments: &Moments, n: usize, k_max: usize, min_seg: usize) -> DpTables {
    // best[k-1][j]: minimal contrast of y[0..j] split into k pieces.
    let mut best = vec![vec![f64::INFINITY; n + 1]; k_max];
    let mut arg = vec![vec![0u32; n + 1]; k_max];
    let mut row_min = vec![0.0; k_max];
    for j in min_seg..=n {
        best[0][j] = moments.cost(0, j);
        if k_max == 1 {
            continue;
        }
        row_min.iter_mut().for_each(|v| *v = f64::INFINITY);
        let mut row_arg = vec![0u32; k_max];
        // Every admissible last piece [i, j) is scored once and offered to all K.
        for i in min_seg..=j - min_seg {
            let c = moments.cost(i, j);
            let pieces_before = (i / min_seg).min(k_max - 1);
            for k in 1..=pieces_before {
                let cand = best[k - 1][i] + c;
                if cand < row_min[k] {
                    row_min[k] = cand;
                    row_arg[k] = i as u32;
                }
            }
        }
        for k in 1..k_max {
            best[k][j] = row_min[k];
            arg[k][j] = row_arg[k];
        }
    }
    DpTables { n, arg }
}

impl DpTables {
    fn taus(&self, k: usize) -> Vec<usize> {
        let mut taus = Vec::with_capacity(k.saturating_sub(1));
        let mut j = self.n;
        for level in (1..k).rev() {
            j = self.arg[level][j] as usize;
            taus.push(j);
        }
        taus.reverse();
        taus
    }
}

fn build_segmentation(moments: &Moments, n: usize, taus: Vec<usize>) -> Segmentation {
    let mut bounds = Vec::with_capacity(taus.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(&taus);
    bounds.push(n);
    let segments: Vec<SegmentFit> = bounds.windows(2).map(|w| moments.segment(w[0], w[1])).collect();
    let contrast = bounds.windows(2).map(|w| moments.cost(w[0], w[1])).sum();
    Segmentation { n, k: segments.len(), taus, segments, contrast }
}

fn check_feasible(n: usize, k: usize, config: &ChangepointConfig) -> Result<()> {
    let reduced = n / config.downsample;
    if k == 0 || k * config.min_seg > reduced {
        return Err(Error::Constraint(format!(
            "cannot split {reduced} samples into {k} segments of at least {} samples",
            config.min_seg
        )));
    }
    Ok(())
}

/// Exact optimal segmentations for every `K = 1..=k_max`.
fn segment_all(series: &UniformSeries, k_max: usize, config: &ChangepointConfig) -> Result<Vec<Segmentation>> {
    config.validate()?;
    check_feasible(series.len(), k_max, config)?;
    let full = Moments::new(series.values(), config.sigma_floor_rel);
    let f = config.downsample;
    let n = series.len();
    if f == 1 {
        let dp = run_dp(&full, n, k_max, config.min_seg);
        return Ok((1..=k_max).map(|k| build_segmentation(&full, n, dp.taus(k))).collect());
    }
    let reduced: Vec<f64> = series.values().iter().step_by(f).copied().collect();
    let moments = Moments::new(&reduced, config.sigma_floor_rel);
    let dp = run_dp(&moments, reduced.len(), k_max, config.min_seg);
    Ok((1..=k_max)
        .map(|k| {
            let taus = dp.taus(k).into_iter().map(|t| t * f).collect();
            build_segmentation(&full, n, taus)
        })
        .collect())
}

/// Global minimizer of the total contrast over segmentations into `k` pieces.
pub fn detect_k(series: &UniformSeries, k: usize, config: &ChangepointConfig) -> Result<Segmentation> {
    check_feasible(series.len(), k, config)?;
    Ok(segment_all(series, k, config)?.pop().expect("k >= 1"))
}

/// Elbow rule: the greatest `K_{i+1}` whose preceding drop dominates.
///
/// Index `i` qualifies when `l_i > 0`, `l_i ≥ elbow_ratio · max_{j>i} |l_j|`
/// and `β_i ≥ min_gain_ratio · β_{i+1}`. With no qualifying index the series
/// is kept whole.
pub fn elbow(ks: &[usize], betas: &[f64], ls: &[f64], config: &ChangepointConfig) -> usize {
    let mut selected = ks[0];
    for i in 0..ls.len() {
        let later = &ls[i + 1..];
        if later.is_empty() {
            break;
        }
        let dominance = later.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
        if ls[i] > 0.0 && ls[i] >= config.elbow_ratio * dominance && betas[i] >= config.min_gain_ratio * betas[i + 1] {
            selected = ks[i + 1];
        }
    }
    selected
}

/// Scan `K = 1..=k_max` and pick the number of segments by the elbow rule.
pub fn select_k(series: &UniformSeries, k_max: usize, config: &ChangepointConfig) -> Result<PenaltyScan> {
    if k_max < 2 {
        return Err(Error::param("k_max must be at least 2"));
    }
    let segmentations = segment_all(series, k_max, config)?;
    let ks: Vec<usize> = (1..=k_max).collect();
    let contrasts: Vec<f64> = segmentations.iter().map(|s| s.contrast).collect();
    let betas: Vec<f64> =
        (0..k_max - 1).map(|i| (contrasts[i] - contrasts[i + 1]) / (ks[i + 1] - ks[i]) as f64).collect();
    let ls: Vec<f64> = betas.windows(2).map(|w| w[0] - w[1]).collect();
    let selected = elbow(&ks, &betas, &ls, config);
    Ok(PenaltyScan { ks, contrasts, betas, ls, selected, segmentations })
}

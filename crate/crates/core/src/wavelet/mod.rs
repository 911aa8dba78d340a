//! Wavelet scale spectra and Hurst estimation.
//!
//! One mother wavelet serves every mode. Its Fourier transform `ψ̂` is an
//! even bump supported on `±[α, β]`, rising from 0 to 1 and back through a
//! smooth transition polynomial. Because `ψ̂` vanishes around the origin the
//! wavelet has infinitely many vanishing moments in continuous time; the
//! discrete filters are additionally projected so that their first moments
//! vanish exactly on the sampling grid.
//!
//! Three regression modes are supported:
//!
//! | mode          | input             | slope of `log S_N(a)` |
//! |---------------|-------------------|-----------------------|
//! | `lrd`         | stationary noise  | `2H - 1`              |
//! | `selfsimilar` | aggregated path   | `2H + 1`              |
//! | `band`        | aggregated path   | `2H + 1`, band scales |

mod band;
pub(crate) mod covariance;
mod gof;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::inference::regression::line_fit;
use crate::inference::t_quantile;
use crate::linalg::gls_line;
use crate::{Error, Result, UniformSeries};

pub use band::{suggest_band, BandSuggestion};
pub use gof::goodness_of_fit;

/// Filter half-width in units of the scale.
pub const HALF_WIDTH: f64 = 16.0;
/// Highest polynomial degree removed exactly by every discrete filter.
pub const MOMENT_DEGREE: usize = 6;
/// Number of pseudo-GLS refinements after the ordinary least-squares start.
const GLS_ITERATIONS: usize = 2;
const PSI_QUADRATURE_INTERVALS: usize = 1024;

/// Band-limited mother wavelet with `ψ̂` supported on `±[α, β]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotherWavelet {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for MotherWavelet {
    fn default() -> Self {
        Self { alpha: PI / 2.0, beta: PI }
    }
}

impl MotherWavelet {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < beta && beta.is_finite()) {
            return Err(Error::param(format!("wavelet support needs 0 < alpha < beta, got [{alpha}, {beta}]")));
        }
        Ok(Self { alpha, beta })
    }

    /// Support `[α, 2α]`.
    pub fn octave(alpha: f64) -> Result<Self> {
        Self::new(alpha, 2.0 * alpha)
    }

    pub fn ratio(&self) -> f64 {
        self.beta / self.alpha
    }

    /// `ψ̂(ξ)`, even, zero outside `α < |ξ| < β`.
    pub fn psi_hat(&self, xi: f64) -> f64 {
        let xi = xi.abs();
        if xi <= self.alpha || xi >= self.beta {
            return 0.0;
        }
        let x = (xi - self.alpha) / (self.beta - self.alpha);
        // Meyer's transition: 0 at x = 0, 1 at x = 1, flat to third order at both ends.
        let nu = x.powi(4) * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x.powi(3));
        (PI * nu).sin()
    }

    /// `ψ(t) = (1/π) ∫_α^β ψ̂(ξ) cos(tξ) dξ`.
    pub fn psi(&self, t: f64) -> f64 {
        let n = PSI_QUADRATURE_INTERVALS;
        let h = (self.beta - self.alpha) / n as f64;
        let mut acc = 0.0;
        for i in 1..n {
            let xi = self.alpha + i as f64 * h;
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * self.psi_hat(xi) * (t * xi).cos();
        }
        acc * h / 3.0 / PI
    }
}

/// Discretized, moment-corrected wavelet at one scale.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    scale: f64,
    delta: f64,
    half_width: usize,
    taps: Vec<f64>,
}

impl WaveletFilter {
    /// Taps `(Δ/√a) ψ(jΔ/a)` for `|j| ≤ J`, projected orthogonally to all
    /// polynomials of degree at most [`MOMENT_DEGREE`] in `j`.
    pub fn new(wavelet: &MotherWavelet, scale: f64, delta: f64) -> Result<Self> {
        check_scale(wavelet, scale, delta)?;
        let s = scale / delta;
        let half_width = (HALF_WIDTH * s).ceil() as usize;
        let len = 2 * half_width + 1;
        let mut taps: Vec<f64> = (0..len)
            .map(|i| {
                let j = i as f64 - half_width as f64;
                delta / scale.sqrt() * wavelet.psi(j / s)
            })
            .collect();
        for q in polynomial_basis(half_width, MOMENT_DEGREE) {
            let c: f64 = q.iter().zip(&taps).map(|(a, b)| a * b).sum();
            taps.iter_mut().zip(&q).for_each(|(t, q)| *t -= c * q);
        }
        Ok(Self { scale, delta, half_width, taps })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Sample indices `round(k a / Δ)`, `k ≥ 1`, whose filter support lies
    /// inside `[0, n)`.
    pub fn centres(&self, n: usize) -> Vec<usize> {
        centres(self.scale, self.delta, self.half_width, n)
    }

    /// Coefficients `e(a, c) = Σ_j h_j Z(c + j)` at every admissible centre.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        self.centres(values.len())
            .into_iter()
            .map(|c| {
                let window = &values[c - self.half_width..=c + self.half_width];
                window.iter().zip(&self.taps).map(|(v, h)| v * h).sum()
            })
            .collect()
    }
}

pub(crate) fn centres(scale: f64, delta: f64, half_width: usize, n: usize) -> Vec<usize> {
    let s = scale / delta;
    let count = (n as f64 / s).floor() as usize;
    (1..=count).map(|k| (k as f64 * s).round() as usize).filter(|&c| c >= half_width && c + half_width < n).collect()
}

/// Orthonormal basis of polynomials of degree ≤ `degree` on `j/J`, `|j| ≤ J`.
fn polynomial_basis(half_width: usize, degree: usize) -> Vec<Vec<f64>> {
    let len = 2 * half_width + 1;
    let u: Vec<f64> = (0..len).map(|i| (i as f64 - half_width as f64) / half_width as f64).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(degree + 1);
    for p in 0..=degree {
        let mut v: Vec<f64> = u.iter().map(|x| x.powi(p as i32)).collect();
        // Two passes of modified Gram-Schmidt keep the basis orthogonal to rounding.
        for _ in 0..2 {
            for q in &basis {
                let c: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(x, q)| *x -= c * q);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        basis.push(v);
    }
    basis
}

fn check_scale(wavelet: &MotherWavelet, scale: f64, delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::param(format!("sampling step must be positive, got {delta}")));
    }
    if !(scale >= 2.0 * delta * (1.0 - 1e-12)) || !scale.is_finite() {
        return Err(Error::param(format!("scale {scale} is below 2 sampling steps ({delta})")));
    }
    if wavelet.beta / scale > PI / delta * (1.0 + 1e-12) {
        return Err(Error::param(format!("scale {scale} puts the wavelet band above the Nyquist frequency")));
    }
    Ok(())
}

/// Discrete wavelet coefficients of `series` at `scale` (boundary coefficients dropped).
pub fn wavelet_coefficients(series: &UniformSeries, wavelet: &MotherWavelet, scale: f64) -> Result<Vec<f64>> {
    let filter = WaveletFilter::new(wavelet, scale, series.delta())?;
    Ok(filter.apply(series.values()))
}

/// How the log-log slope of the spectrum maps to `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumMode {
    /// Stationary long-range dependent input: slope `2H - 1`.
    Lrd,
    /// Self-similar path input: slope `2H + 1`.
    Selfsimilar,
    /// Path whose spectrum is a power law only for `ω₀ ≤ |ξ| ≤ ω₁`.
    Band { omega0: f64, omega1: f64 },
}

impl SpectrumMode {
    pub fn hurst_from_slope(&self, slope: f64) -> f64 {
        match self {
            SpectrumMode::Lrd => (slope + 1.0) / 2.0,
            _ => (slope - 1.0) / 2.0,
        }
    }

    pub fn slope_from_hurst(&self, h: f64) -> f64 {
        match self {
            SpectrumMode::Lrd => 2.0 * h - 1.0,
            _ => 2.0 * h + 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpectrumMode::Lrd => "lrd",
            SpectrumMode::Selfsimilar => "selfsimilar",
            SpectrumMode::Band { .. } => "band",
        }
    }
}

/// Regression used to turn a spectrum into an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regression {
    #[default]
    Ols,
    /// Generalized least squares with the model covariance of `log S_N`
    /// evaluated at the current estimate, refined from the OLS start.
    Gls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    Dfa,
    WaveletOls,
    WaveletGls,
}

/// Chi-squared goodness-of-fit outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub level: f64,
    pub accepted: bool,
}

/// Estimated exponent with its regression diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractalEstimate {
    pub h_hat: f64,
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of `h_hat`.
    pub stderr: f64,
    /// Half-width of the 95% confidence interval for `H`.
    pub ci_halfwidth: f64,
    pub method: EstimateMethod,
    pub gof: Option<GofResult>,
}

/// Sample wavelet variances `S_N(a)` on a grid of scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleSpectrum {
    pub scales: Vec<f64>,
    pub s_n: Vec<f64>,
    pub counts: Vec<usize>,
    pub mode: SpectrumMode,
    pub wavelet: MotherWavelet,
    pub delta: f64,
    pub n_samples: usize,
    /// Requested scales dropped because they fall outside the band.
    pub rejected: Vec<f64>,
}

impl ScaleSpectrum {
    pub fn log_scales(&self) -> Vec<f64> {
        self.scales.iter().map(|a| a.ln()).collect()
    }

    pub fn log_s_n(&self) -> Vec<f64> {
        self.s_n.iter().map(|s| s.ln()).collect()
    }

    /// True when some scale has zero sample variance.
    pub fn is_degenerate(&self) -> bool {
        self.s_n.iter().any(|s| !(*s > 0.0))
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }
}

/// `count` geometric points in `[lo, hi]`.
pub fn geometric_scales(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![lo];
    }
    let step = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (step * i as f64).exp()).collect()
}

/// Twelve geometric scales over `[4Δ, N^{0.4} Δ]` for estimation.
pub fn default_scales(n: usize, delta: f64) -> Result<Vec<f64>> {
    scales_between(4.0 * delta, (n as f64).powf(0.4) * delta, 12)
}

/// Twelve geometric scales over `[4Δ, N^{1/3} Δ]`, the grid on which the
/// goodness-of-fit statistic is calibrated.
pub fn gof_scales(n: usize, delta: f64) -> Result<Vec<f64>> {
    scales_between(4.0 * delta, (n as f64).cbrt() * delta, 12)
}

fn scales_between(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 3 {
        return Err(Error::param("at least 3 scales are required"));
    }
    if !(hi > lo) {
        return Err(Error::param(format!("empty scale range [{lo}, {hi}]")));
    }
    Ok(geometric_scales(lo, hi, count))
}

/// Scales whose wavelet band `[α/a, β/a]` lies in `[ω₀, ω₁]` and above `2Δ`.
pub fn band_scales(wavelet: &MotherWavelet, omega0: f64, omega1: f64, delta: f64, count: usize) -> Result<Vec<f64>> {
    let (lo, hi) = band_scale_range(wavelet, omega0, omega1, delta)?;
    if count < 3 {
        return Err(Error::param("at least 3 scales are required"));
    }
    Ok(geometric_scales(lo, hi, count))
}

/// Admissible scale interval for band estimation.
pub fn band_scale_range(wavelet: &MotherWavelet, omega0: f64, omega1: f64, delta: f64) -> Result<(f64, f64)> {
    if !(omega0 > 0.0 && omega1 > omega0 && omega1.is_finite()) {
        return Err(Error::param(format!("invalid band [{omega0}, {omega1}]")));
    }
    if wavelet.ratio() >= omega1 / omega0 {
        return Err(Error::BandTooNarrow(format!(
            "wavelet ratio beta/alpha = {} is not below omega1/omega0 = {}",
            wavelet.ratio(),
            omega1 / omega0
        )));
    }
    let lo = (wavelet.beta / omega1).max(2.0 * delta);
    let hi = wavelet.alpha / omega0;
    if !(hi > lo) {
        return Err(Error::BandTooNarrow(format!(
            "band [{omega0}, {omega1}] leaves no scale above 2 sampling steps ({delta})"
        )));
    }
    Ok((lo, hi))
}

/// Prepared filters for repeated spectra on series of a fixed step.
#[derive(Debug, Clone)]
pub struct SpectrumAnalyzer {
    wavelet: MotherWavelet,
    mode: SpectrumMode,
    delta: f64,
    filters: Vec<WaveletFilter>,
    rejected: Vec<f64>,
}

impl SpectrumAnalyzer {
    pub fn new(wavelet: MotherWavelet, scales: &[f64], delta: f64, mode: SpectrumMode) -> Result<Self> {
        if scales.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::param("scales must be strictly increasing"));
        }
        let (kept, rejected): (Vec<f64>, Vec<f64>) = match mode {
            SpectrumMode::Band { omega0, omega1 } => {
                let (lo, hi) = band_scale_range(&wavelet, omega0, omega1, delta)?;
                let tol = 1e-9;
                scales.iter().partition(|&&a| a >= lo * (1.0 - tol) && a <= hi * (1.0 + tol))
            }
            _ => (scales.to_vec(), Vec::new()),
        };
        if kept.len() < 3 {
            let msg = format!("{} of {} scales are admissible; at least 3 are needed", kept.len(), scales.len());
            return Err(match mode {
                SpectrumMode::Band { .. } => Error::BandTooNarrow(msg),
                _ => Error::param(msg),
            });
        }
        if !rejected.is_empty() {
            log::info!("rejected {} scales outside the band: {:?}", rejected.len(), rejected);
        }
        let filters = kept.iter().map(|&a| WaveletFilter::new(&wavelet, a, delta)).collect::<Result<Vec<_>>>()?;
        Ok(Self { wavelet, mode, delta, filters, rejected })
    }

    pub fn scales(&self) -> Vec<f64> {
        self.filters.iter().map(|f| f.scale).collect()
    }

    pub fn mode(&self) -> SpectrumMode {
        self.mode
    }

    pub fn spectrum(&self, series: &UniformSeries) -> Result<ScaleSpectrum> {
        if ((series.delta() - self.delta) / self.delta).abs() > 1e-9 {
            return Err(Error::param(format!(
                "analyzer built for step {} applied to a series with step {}",
                self.delta,
                series.delta()
            )));
        }
        let mut s_n = Vec::with_capacity(self.filters.len());
        let mut counts = Vec::with_capacity(self.filters.len());
        for f in &self.filters {
            let coeffs = f.apply(series.values());
            if coeffs.is_empty() {
                return Err(Error::param(format!(
                    "scale {} is too large for a series of {} samples",
                    f.scale,
                    series.len()
                )));
            }
            s_n.push(coeffs.iter().map(|c| c * c).sum::<f64>() / coeffs.len() as f64);
            counts.push(coeffs.len());
        }
        Ok(ScaleSpectrum {
            scales: self.scales(),
            s_n,
            counts,
            mode: self.mode,
            wavelet: self.wavelet,
            delta: self.delta,
            n_samples: series.len(),
            rejected: self.rejected.clone(),
        })
    }
}

/// `S_N(a) = mean of e(a, ·)²` at each admissible scale.
pub fn scale_spectrum(
    series: &UniformSeries,
    wavelet: &MotherWavelet,
    scales: &[f64],
    mode: SpectrumMode,
) -> Result<ScaleSpectrum> {
    SpectrumAnalyzer::new(*wavelet, scales, series.delta(), mode)?.spectrum(series)
}

/// Regress `log S_N(a)` on `log a` and map the slope to `Ĥ`.
pub fn estimate_h_wavelet(spectrum: &ScaleSpectrum, regression: Regression) -> Result<FractalEstimate> {
    if spectrum.len() < 3 {
        return Err(Error::param("wavelet regression needs at least 3 scales"));
    }
    if spectrum.is_degenerate() {
        return Err(Error::Degenerate("zero wavelet variance at some scale".into()));
    }
    let x = spectrum.log_scales();
    let y = spectrum.log_s_n();
    let ols = line_fit(&x, &y, None)?;
    let mode = spectrum.mode;
    match regression {
        Regression::Ols => {
            let stderr = ols.stderr_slope / 2.0;
            Ok(FractalEstimate {
                h_hat: mode.hurst_from_slope(ols.slope),
                slope: ols.slope,
                intercept: ols.intercept,
                stderr,
                ci_halfwidth: t_quantile(0.975, x.len() as f64 - 2.0) * stderr,
                method: EstimateMethod::WaveletOls,
                gof: None,
            })
        }
        Regression::Gls => {
            let mut h = mode.hurst_from_slope(ols.slope);
            let mut fit = None;
            for _ in 0..GLS_ITERATIONS {
                let cov = covariance::log_spectrum_covariance(spectrum, h)?;
                let line = gls_line(&x, &y, &cov)?;
                h = mode.hurst_from_slope(line.slope);
                fit = Some(line);
            }
            let line = fit.expect("at least one iteration");
            let stderr = line.slope_var.sqrt() / 2.0;
            Ok(FractalEstimate {
                h_hat: h,
                slope: line.slope,
                intercept: line.intercept,
                stderr,
                ci_halfwidth: 1.959_963_984_540_054 * stderr,
                method: EstimateMethod::WaveletGls,
                gof: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_hat_shape() {
        let w = MotherWavelet::default();
        assert_eq!(w.psi_hat(0.0), 0.0);
        assert_eq!(w.psi_hat(1.0), 0.0);
        assert_eq!(w.psi_hat(3.5), 0.0);
        let mid = 0.75 * PI;
        assert!((w.psi_hat(mid) - 1.0).abs() < 1e-12);
        assert_eq!(w.psi_hat(-2.0), w.psi_hat(2.0));
    }

    #[test]
    fn psi_is_even_and_decays() {
        let w = MotherWavelet::default();
        assert!((w.psi(1.3) - w.psi(-1.3)).abs() < 1e-15);
        assert!(w.psi(0.0) > 0.0);
        assert!(w.psi(16.0).abs() < 1e-2 * w.psi(0.0));
        assert!(w.psi(32.0).abs() < 1e-4 * w.psi(0.0));
    }

    #[test]
    fn filter_moments_vanish() {
        let f = WaveletFilter::new(&MotherWavelet::default(), 3.0, 1.0).unwrap();
        let j = f.half_width() as f64;
        for p in 0..=MOMENT_DEGREE {
            let m: f64 = f.taps().iter().enumerate().map(|(i, h)| h * ((i as f64 - j) / j).powi(p as i32)).sum();
            assert!(m.abs() < 1e-14, "moment {p}: {m}");
        }
    }

    #[test]
    fn constant_series_has_zero_coefficients() {
        let s = UniformSeries::from_values(vec![3.0; 500]).unwrap();
        let c = wavelet_coefficients(&s, &MotherWavelet::default(), 4.0).unwrap();
        assert!(!c.is_empty());
        assert!(c.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn scale_admissibility() {
        let w = MotherWavelet::default();
        assert!(WaveletFilter::new(&w, 1.5, 1.0).is_err());
        assert!(WaveletFilter::new(&w, 2.0, 1.0).is_ok());
        let wide = MotherWavelet::new(0.5, 7.0).unwrap();
        assert!(WaveletFilter::new(&wide, 1.0, 0.5).is_err());
    }

    #[test]
    fn centres_avoid_edges() {
        let c = centres(4.0, 1.0, 64, 1000);
        assert_eq!(c.first(), Some(&64));
        assert!(c.iter().all(|&c| c >= 64 && c + 64 < 1000));
        assert!(c.windows(2).all(|w| w[1] - w[0] == 4));
    }

    #[test]
    fn mode_mapping() {
        assert_eq!(SpectrumMode::Lrd.hurst_from_slope(0.4), 0.7);
        assert_eq!(SpectrumMode::Selfsimilar.hurst_from_slope(2.4), 0.7);
        let b = SpectrumMode::Band { omega0: 0.2, omega1: 4.0 };
        assert!((b.hurst_from_slope(b.slope_from_hurst(1.3)) - 1.3).abs() < 1e-15);
    }

    fn synthetic(mode: SpectrumMode, slope: f64) -> ScaleSpectrum {
        let scales = geometric_scales(4.0, 20.0, 8);
        ScaleSpectrum {
            s_n: scales.iter().map(|a| 0.3 * a.powf(slope)).collect(),
            counts: scales.iter().map(|a| (2000.0 / a) as usize).collect(),
            scales,
            mode,
            wavelet: MotherWavelet::default(),
            delta: 1.0,
            n_samples: 2000,
            rejected: vec![],
        }
    }

    #[test]
    fn exact_power_law_estimates() {
        let s = synthetic(SpectrumMode::Selfsimilar, 2.4);
        for reg in [Regression::Ols, Regression::Gls] {
            let e = estimate_h_wavelet(&s, reg).unwrap();
            assert!((e.h_hat - 0.7).abs() < 1e-10, "{reg:?}: {}", e.h_hat);
            assert!(e.stderr.abs() < 1e-6 || reg == Regression::Gls);
        }
        let ols = estimate_h_wavelet(&s, Regression::Ols).unwrap();
        assert!(ols.stderr < 1e-10);
        assert_eq!(ols.method, EstimateMethod::WaveletOls);
    }

    #[test]
    fn degenerate_spectrum() {
        let mut s = synthetic(SpectrumMode::Lrd, 0.4);
        s.s_n[2] = 0.0;
        assert!(matches!(estimate_h_wavelet(&s, Regression::Ols), Err(Error::Degenerate(_))));
    }

    #[test]
    fn band_range_checks() {
        let w = MotherWavelet::default();
        let (lo, hi) = band_scale_range(&w, 0.2, 4.0, 0.25).unwrap();
        assert!((lo - PI / 4.0).abs() < 1e-12 && (hi - PI / 0.4).abs() < 1e-12);
        assert!(matches!(band_scale_range(&w, 1.0, 1.5, 0.1), Err(Error::BandTooNarrow(_))));
        let scales = geometric_scales(0.5, 20.0, 12);
        let a = SpectrumAnalyzer::new(w, &scales, 0.25, SpectrumMode::Band { omega0: 0.2, omega1: 4.0 }).unwrap();
        assert!(a.scales().iter().all(|&s| s >= lo && s <= hi));
        let err =
            SpectrumAnalyzer::new(w, &[0.5, 0.6, 0.7, 9.0], 0.25, SpectrumMode::Band { omega0: 0.2, omega1: 4.0 });
        assert!(matches!(err, Err(Error::BandTooNarrow(_))));
    }
}

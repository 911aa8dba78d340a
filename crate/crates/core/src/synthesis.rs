//! Ground-truth generators: fractional Gaussian noise (FGN), its aggregated
//! fractional Brownian motion, locally fractional Gaussian noise (lfGN) and
//! additive trends.
//!
//! FGN paths are exact: the covariance matrix is embedded in a circulant of
//! size `2(N-1)` and sampled through one FFT, with a dense Cholesky fallback
//! when the embedding is not non-negative definite. lfGN paths are sampled
//! on a frequency grid from the aliased spectral density of the sampled
//! increment process.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::linalg::cholesky;
use crate::rng::{seeded, SeriesRng};
use crate::{Error, Result, TrendSpec, UniformSeries};

/// Largest size for which the dense Cholesky fallback is attempted.
pub const DENSE_FALLBACK_MAX: usize = 4096;

/// Parameters of a fractional Gaussian noise path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FgnParams {
    pub hurst: f64,
    pub sigma2: f64,
    pub length: usize,
    pub seed: u64,
}

impl FgnParams {
    pub fn new(hurst: f64, sigma2: f64, length: usize, seed: u64) -> Result<Self> {
        let p = Self { hurst, sigma2, length, seed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hurst > 0.0 && self.hurst < 1.0) {
            return Err(Error::param(format!("FGN is only defined for 0 < H < 1, got H = {}", self.hurst)));
        }
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::param(format!("sigma2 must be positive, got {}", self.sigma2)));
        }
        if self.length < 2 {
            return Err(Error::param("FGN length must be at least 2"));
        }
        Ok(())
    }
}

fn acov(hurst: f64, sigma2: f64, lag: usize) -> f64 {
    let k = lag as f64;
    let e = 2.0 * hurst;
    let lower = if lag == 0 { 1.0 } else { (k - 1.0).powf(e) };
    0.5 * sigma2 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + lower)
}

/// `(σ²/2)(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})`.
pub fn fgn_autocovariance(params: &FgnParams, lag: usize) -> Result<f64> {
    params.validate()?;
    Ok(acov(params.hurst, params.sigma2, lag))
}

enum FgnMethod {
    Circulant { sqrt_eig: Vec<f64>, fft: Arc<dyn Fft<f64>> },
    Dense { chol: DMatrix<f64> },
}

/// Reusable FGN sampler for a fixed `(H, σ², N)`.
///
/// The circulant eigenvalues (or the Cholesky factor) are computed once, so
/// Monte Carlo loops only pay one FFT per path.
pub struct FgnSampler {
    hurst: f64,
    sigma2: f64,
    length: usize,
    method: FgnMethod,
}

impl FgnSampler {
    pub fn new(hurst: f64, sigma2: f64, length: usize) -> Result<Self> {
        FgnParams { hurst, sigma2, length, seed: 0 }.validate()?;
        let m = 2 * (length - 1);
        let mut row: Vec<Complex64> = (0..m)
            .map(|j| {
                let lag = if j < length { j } else { m - j };
                Complex64::new(acov(hurst, sigma2, lag), 0.0)
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut row);
        let max_eig = row.iter().map(|c| c.re).fold(0.0_f64, f64::max);
        let min_eig = row.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
        let method = if min_eig >= -1e-10 * max_eig {
            let sqrt_eig = row.iter().map(|c| (c.re.max(0.0) / m as f64).sqrt()).collect();
            FgnMethod::Circulant { sqrt_eig, fft }
        } else {
            log::debug!("circulant embedding has eigenvalue {min_eig:.3e}; using Cholesky");
            Self::dense(hurst, sigma2, length)?
        };
        Ok(Self { hurst, sigma2, length, method })
    }

    /// Sampler that always uses the dense covariance factorization.
    pub fn new_dense(hurst: f64, sigma2: f64, length: usize) -> Result<Self> {
        FgnParams { hurst, sigma2, length, seed: 0 }.validate()?;
        let method = Self::dense(hurst, sigma2, length)?;
        Ok(Self { hurst, sigma2, length, method })
    }

    fn dense(hurst: f64, sigma2: f64, length: usize) -> Result<FgnMethod> {
        if length > DENSE_FALLBACK_MAX {
            return Err(Error::Numerical(format!(
                "dense FGN factorization refused for N = {length} > {DENSE_FALLBACK_MAX}"
            )));
        }
        let cov = DMatrix::from_fn(length, length, |i, j| acov(hurst, sigma2, i.abs_diff(j)));
        Ok(FgnMethod::Dense { chol: cholesky(cov)? })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn uses_circulant(&self) -> bool {
        matches!(self.method, FgnMethod::Circulant { .. })
    }

    pub fn sample(&self, seed: u64) -> UniformSeries {
        let mut rng = seeded(seed);
        let values = match &self.method {
            FgnMethod::Circulant { sqrt_eig, fft } => {
                let mut buf: Vec<Complex64> =
                    sqrt_eig.iter().map(|s| Complex64::new(s * normal(&mut rng), s * normal(&mut rng))).collect();
                fft.process(&mut buf);
                buf[..self.length].iter().map(|c| c.re).collect()
            }
            FgnMethod::Dense { chol } => {
                let z = DVector::from_fn(self.length, |_, _| normal(&mut rng));
                (chol * z).iter().copied().collect()
            }
        };
        UniformSeries::new(values, 1.0, 0.0).expect("FGN samples are finite")
    }
}

fn normal(rng: &mut SeriesRng) -> f64 {
    StandardNormal.sample(rng)
}

/// Exact FGN path with unit sampling step.
pub fn generate_fgn(params: &FgnParams) -> Result<UniformSeries> {
    Ok(FgnSampler::new(params.hurst, params.sigma2, params.length)?.sample(params.seed))
}

/// Cumulative sums: `out[k] = in[0] + ... + in[k]`.
///
/// The implicit starting value is `X(0) = 0`, so [`difference`] inverts this.
pub fn aggregate(series: &UniformSeries) -> UniformSeries {
    let mut acc = 0.0;
    let values = series
        .values()
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect();
    series.with_values(values).expect("partial sums of finite values")
}

/// First differences with `X(0) = 0`: `out[0] = in[0]`, `out[k] = in[k] - in[k-1]`.
pub fn difference(series: &UniformSeries) -> UniformSeries {
    let v = series.values();
    let values = std::iter::once(v[0]).chain(v.windows(2).map(|w| w[1] - w[0])).collect();
    series.with_values(values).expect("differences of finite values")
}

/// Pointwise sum of a series and a trend on normalized time `k / N`.
pub fn add_trend(series: &UniformSeries, trend: &TrendSpec) -> Result<UniformSeries> {
    trend.validate()?;
    let n = series.len() as f64;
    let values = series.values().iter().enumerate().map(|(k, v)| v + trend.eval(k as f64 / n)).collect();
    series.with_values(values)
}

/// Spectral weight `ρ` of a locally fractional Brownian motion.
///
/// Inside `[ω₀, ω₁]`, `ρ(ξ) = |ξ|^{H+1/2} / σ`. Outside, `ρ` continues as a
/// power law with exponent `h_low + 1/2` (below `ω₀`) or `h_high + 1/2`
/// (above `ω₁`), scaled to stay continuous at the band edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub hurst_band: f64,
    pub sigma: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub h_low: f64,
    pub h_high: f64,
}

impl SpectralProfile {
    /// Profile with the default continuation `h_low = 0.5`, `h_high = max(H, 0.5)`.
    pub fn new(hurst_band: f64, sigma: f64, omega0: f64, omega1: f64) -> Result<Self> {
        Self::with_continuation(hurst_band, sigma, omega0, omega1, 0.5, hurst_band.max(0.5))
    }

    pub fn with_continuation(
        hurst_band: f64,
        sigma: f64,
        omega0: f64,
        omega1: f64,
        h_low: f64,
        h_high: f64,
    ) -> Result<Self> {
        let p = Self { hurst_band, sigma, omega0, omega1, h_low, h_high };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.hurst_band.is_finite() {
            return Err(Error::param("in-band exponent must be finite"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::param(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.omega0 > 0.0 && self.omega0 < self.omega1 && self.omega1.is_finite()) {
            return Err(Error::param(format!(
                "band must satisfy 0 < omega0 < omega1, got [{}, {}]",
                self.omega0, self.omega1
            )));
        }
        // (1 ∧ ξ²) ρ⁻²(ξ) integrable at 0 and at infinity.
        if !(self.h_low < 1.0) {
            return Err(Error::param(format!("h_low must be < 1, got {}", self.h_low)));
        }
        if !(self.h_high > 0.0) {
            return Err(Error::param(format!("h_high must be > 0, got {}", self.h_high)));
        }
        Ok(())
    }

    fn band_inv_rho2(&self, xi: f64) -> f64 {
        self.sigma * self.sigma * xi.powf(-(2.0 * self.hurst_band + 1.0))
    }

    /// `ρ(ξ)`.
    pub fn rho(&self, xi: f64) -> f64 {
        self.inv_rho2(xi).powf(-0.5)
    }

    /// `ρ(ξ)⁻²`, the spectral density of the underlying harmonizable process.
    pub fn inv_rho2(&self, xi: f64) -> f64 {
        let xi = xi.abs();
        if xi < self.omega0 {
            self.band_inv_rho2(self.omega0) * (xi / self.omega0).powf(-(2.0 * self.h_low + 1.0))
        } else if xi > self.omega1 {
            self.band_inv_rho2(self.omega1) * (xi / self.omega1).powf(-(2.0 * self.h_high + 1.0))
        } else {
            self.band_inv_rho2(xi)
        }
    }

    /// `∫_x^∞ ρ⁻²(ξ) dξ` for `x > 0`.
    fn tail_integral(&self, x: f64) -> f64 {
        // ∫_a^b c (ξ/r)^{-p} dξ
        fn piece(c: f64, r: f64, p: f64, a: f64, b: f64) -> f64 {
            if (p - 1.0).abs() < 1e-12 {
                c * r * (b / a).ln()
            } else {
                c * r.powf(p) * (b.powf(1.0 - p) - a.powf(1.0 - p)) / (1.0 - p)
            }
        }
        let p_high = 2.0 * self.h_high + 1.0;
        let c1 = self.band_inv_rho2(self.omega1);
        let above = |a: f64| c1 * self.omega1.powf(p_high) * a.powf(1.0 - p_high) / (p_high - 1.0);
        if x >= self.omega1 {
            return above(x);
        }
        let s2 = self.sigma * self.sigma;
        let p_band = 2.0 * self.hurst_band + 1.0;
        if x >= self.omega0 {
            return piece(s2, 1.0, p_band, x, self.omega1) + above(self.omega1);
        }
        let c0 = self.band_inv_rho2(self.omega0);
        piece(c0, self.omega0, 2.0 * self.h_low + 1.0, x, self.omega0)
            + piece(s2, 1.0, p_band, self.omega0, self.omega1)
            + above(self.omega1)
    }

    /// Spectral density of `X_ρ` sampled at step `delta`, folded onto
    /// `[0, π/Δ]`: `Σ_j ρ⁻²(ξ + 2πj/Δ)`.
    pub fn aliased_inv_rho2(&self, xi: f64, delta: f64) -> f64 {
        const TERMS: usize = 64;
        let period = 2.0 * PI / delta;
        let mut total = self.inv_rho2(xi);
        for j in 1..=TERMS {
            let shift = period * j as f64;
            total += self.inv_rho2(shift + xi) + self.inv_rho2(shift - xi);
        }
        // Midpoint rule for the remaining terms.
        let edge = period * (TERMS as f64 + 0.5);
        total += (self.tail_integral(edge + xi) + self.tail_integral(edge - xi)) / period;
        total
    }
}

/// Reusable lfGN sampler for a fixed profile, length and step.
pub struct LfgnSampler {
    length: usize,
    delta: f64,
    /// Standard deviation of the complex amplitude at grid frequency `k`.
    amplitude: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl LfgnSampler {
    pub fn new(profile: &SpectralProfile, length: usize, delta: f64) -> Result<Self> {
        profile.validate()?;
        if length < 2 {
            return Err(Error::param("lfGN length must be at least 2"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("sampling step must be positive, got {delta}")));
        }
        let span = length as f64 * delta;
        if span < 4.0 * 2.0 * PI / profile.omega0 {
            log::warn!("lfGN path spans {span:.3} time units, fewer than four periods of the lower band edge");
        }
        let m = 2 * length;
        let dxi = 2.0 * PI / (m as f64 * delta);
        let amplitude = (0..=m / 2)
            .map(|k| {
                if k == 0 {
                    return 0.0;
                }
                let xi = k as f64 * dxi;
                let gain = 2.0 * (0.5 * xi * delta).sin().abs();
                gain * (profile.aliased_inv_rho2(xi, delta) * dxi).sqrt()
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_inverse(m);
        Ok(Self { length, delta, amplitude, fft })
    }

    pub fn sample(&self, seed: u64) -> UniformSeries {
        let mut rng = seeded(seed);
        let m = 2 * self.length;
        let half = m / 2;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for k in 1..half {
            let s = self.amplitude[k] * std::f64::consts::FRAC_1_SQRT_2;
            let a = Complex64::new(s * normal(&mut rng), s * normal(&mut rng));
            buf[k] = a;
            buf[m - k] = a.conj();
        }
        buf[half] = Complex64::new(self.amplitude[half] * normal(&mut rng), 0.0);
        self.fft.process(&mut buf);
        let values = buf[..self.length].iter().map(|c| c.re).collect();
        UniformSeries::new(values, self.delta, 0.0).expect("lfGN samples are finite")
    }
}

/// Locally fractional Gaussian noise: increments `X_ρ(kΔ) - X_ρ((k-1)Δ)`.
pub fn generate_lfgn(profile: &SpectralProfile, n: usize, delta: f64, seed: u64) -> Result<UniformSeries> {
    Ok(LfgnSampler::new(profile, n, delta)?.sample(seed))
}

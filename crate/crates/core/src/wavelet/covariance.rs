//! Model covariance of `log S_N(a_i)` across scales.
//!
//! For a Gaussian input with spectral density `|ξ|^{-γ}`, the coefficients at
//! scales `a_i`, `a_j` and time offset `u` have covariance
//! `c_ij(u) = 2 ∫ √(a_i a_j) ψ̂(a_i ξ) ψ̂(a_j ξ) ξ^{-γ} cos(ξu) dξ`. With
//! correlations `ρ_ij = c_ij / √(c_ii(0) c_jj(0))` and Isserlis' theorem,
//! `Cov(log S_i, log S_j) ≈ 2 / (n_i n_j) Σ_k Σ_m ρ_ij(c_k - c_m)²` to first
//! order.

use nalgebra::DMatrix;

use super::{centres, MotherWavelet, ScaleSpectrum, HALF_WIDTH};
use crate::{Error, Result};

const OVERLAP_INTERVALS: usize = 400;
/// Outer-sum subsample size per scale.
const MAX_OUTER: usize = 256;

fn gamma_for(spectrum: &ScaleSpectrum, h: f64) -> f64 {
    spectrum.mode.slope_from_hurst(h)
}

/// `c_ij(LΔ)` for `L = 0..=max_lag`.
fn cross_covariance(wavelet: &MotherWavelet, ai: f64, aj: f64, gamma: f64, delta: f64, max_lag: usize) -> Vec<f64> {
    let lo = (wavelet.alpha / ai).max(wavelet.alpha / aj);
    let hi = (wavelet.beta / ai).min(wavelet.beta / aj);
    if !(hi > lo) {
        return vec![0.0; max_lag + 1];
    }
    let n = OVERLAP_INTERVALS;
    let step = (hi - lo) / n as f64;
    let root = (ai * aj).sqrt();
    let mut weight = Vec::with_capacity(n + 1);
    let mut theta = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let xi = lo + q as f64 * step;
        let simpson = if q == 0 || q == n {
            1.0
        } else if q % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let g = root * wavelet.psi_hat(ai * xi) * wavelet.psi_hat(aj * xi) * xi.powf(-gamma);
        weight.push(2.0 * simpson * step / 3.0 * g);
        theta.push(xi * delta);
    }
    // cos((L+1)θ) = 2 cos θ cos(Lθ) - cos((L-1)θ)
    let two_cos: Vec<f64> = theta.iter().map(|t| 2.0 * t.cos()).collect();
    let mut prev: Vec<f64> = theta.iter().map(|t| (-t).cos()).collect();
    let mut cur = vec![1.0; n + 1];
    let mut out = Vec::with_capacity(max_lag + 1);
    for _ in 0..=max_lag {
        out.push(weight.iter().zip(&cur).map(|(w, c)| w * c).sum());
        for q in 0..=n {
            let next = two_cos[q] * cur[q] - prev[q];
            prev[q] = cur[q];
            cur[q] = next;
        }
    }
    out
}

/// Covariance matrix of the log spectrum under the power-law model at `h`.
pub(crate) fn log_spectrum_covariance(spectrum: &ScaleSpectrum, h: f64) -> Result<DMatrix<f64>> {
    let gamma = gamma_for(spectrum, h);
    if !gamma.is_finite() {
        return Err(Error::Numerical(format!("non-finite spectral exponent for H = {h}")));
    }
    let wavelet = &spectrum.wavelet;
    let delta = spectrum.delta;
    let scales = &spectrum.scales;
    let l = scales.len();
    let pos: Vec<Vec<usize>> = scales
        .iter()
        .map(|&a| {
            let half = (HALF_WIDTH * a / delta).ceil() as usize;
            centres(a, delta, half, spectrum.n_samples)
        })
        .collect();
    if pos.iter().any(|p| p.is_empty()) {
        return Err(Error::param("a scale has no interior coefficients"));
    }
    let var0: Vec<f64> = scales.iter().map(|&a| cross_covariance(wavelet, a, a, gamma, delta, 0)[0]).collect();
    if var0.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Numerical("model coefficient variance is not positive".into()));
    }
    let mut cov = DMatrix::zeros(l, l);
    for i in 0..l {
        for j in i..l {
            let window = (HALF_WIDTH * (scales[i] + scales[j]) / delta).ceil() as usize + 1;
            let c = cross_covariance(wavelet, scales[i], scales[j], gamma, delta, window);
            let norm = (var0[i] * var0[j]).sqrt();
            let r2: Vec<f64> = c.iter().map(|v| (v / norm).powi(2)).collect();
            let (pi, pj) = (&pos[i], &pos[j]);
            let take = pi.len().min(MAX_OUTER);
            let mut total = 0.0;
            for t in 0..take {
                let idx = if take == 1 { 0 } else { t * (pi.len() - 1) / (take - 1) };
                let k = pi[idx];
                let start = pj.partition_point(|&m| m + window < k);
                for &m in pj[start..].iter().take_while(|&&m| m <= k + window) {
                    total += r2[k.abs_diff(m)];
                }
            }
            total *= pi.len() as f64 / take as f64;
            let value = 2.0 * total / (pi.len() * pj.len()) as f64;
            cov[(i, j)] = value;
            cov[(j, i)] = value;
        }
    }
    Ok(cov)
}

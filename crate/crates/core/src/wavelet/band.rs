use serde::{Deserialize, Serialize};

use super::ScaleSpectrum;
use crate::inference::regression::line_fit;
use crate::{Error, Result};

/// Minimum number of consecutive scales in a candidate window.
const MIN_WINDOW: usize = 4;

/// Band read off the most linear stretch of a wide-band spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSuggestion {
    pub omega0: f64,
    pub omega1: f64,
    /// Scales delimiting the chosen window.
    pub scale_lo: f64,
    pub scale_hi: f64,
    /// Residual variance of the chosen window.
    pub score: f64,
    /// Second-best window, as `(omega0, omega1, score)`.
    pub runner_up: Option<(f64, f64, f64)>,
}

/// Scan every window of at least four consecutive scales and keep the one
/// with the smallest residual variance `RSS / (len - 2)` about its OLS line.
///
/// Ties go to the widest window. The chosen scales `[a_lo, a_hi]` map to the
/// band `[α / a_hi, β / a_lo]`.
pub fn suggest_band(spectrum: &ScaleSpectrum) -> Result<BandSuggestion> {
    let l = spectrum.len();
    if l < 8 {
        return Err(Error::param(format!("band search needs at least 8 scales, got {l}")));
    }
    if spectrum.is_degenerate() {
        return Err(Error::Degenerate("zero wavelet variance at some scale".into()));
    }
    let x = spectrum.log_scales();
    let y = spectrum.log_s_n();
    let mut ranked: Vec<(f64, usize, usize)> = Vec::new();
    for lo in 0..l {
        for hi in lo + MIN_WINDOW..=l {
            let fit = line_fit(&x[lo..hi], &y[lo..hi], None)?;
            ranked.push((fit.rss / (hi - lo - 2) as f64, lo, hi));
        }
    }
    let best_score = ranked.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let tol = 1e-12 + 1e-9 * best_score;
    // Equal scores within rounding, then wider, then smaller scales first.
    ranked.sort_by(|a, b| {
        let a_tie = a.0 <= best_score + tol;
        let b_tie = b.0 <= best_score + tol;
        b_tie
            .cmp(&a_tie)
            .then_with(|| if a_tie && b_tie { std::cmp::Ordering::Equal } else { a.0.total_cmp(&b.0) })
            .then_with(|| (b.2 - b.1).cmp(&(a.2 - a.1)))
            .then_with(|| a.1.cmp(&b.1))
    });
    let band = |(_, lo, hi): (f64, usize, usize)| {
        (spectrum.wavelet.alpha / spectrum.scales[hi - 1], spectrum.wavelet.beta / spectrum.scales[lo])
    };
    let best = ranked[0];
    let (omega0, omega1) = band(best);
    let runner_up = ranked.get(1).map(|&r| {
        let (w0, w1) = band(r);
        (w0, w1, r.0)
    });
    Ok(BandSuggestion {
        omega0,
        omega1,
        scale_lo: spectrum.scales[best.1],
        scale_hi: spectrum.scales[best.2 - 1],
        score: best.0,
        runner_up,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::{geometric_scales, MotherWavelet, SpectrumMode};

    fn spectrum(f: impl Fn(f64) -> f64) -> ScaleSpectrum {
        let scales = geometric_scales(0.5, 16.0, 12);
        ScaleSpectrum {
            s_n: scales.iter().map(|&a| f(a)).collect(),
            counts: vec![100; 12],
            scales,
            mode: SpectrumMode::Selfsimilar,
            wavelet: MotherWavelet::default(),
            delta: 0.25,
            n_samples: 10_000,
            rejected: vec![],
        }
    }

    #[test]
    fn global_power_law_keeps_full_band() {
        let s = spectrum(|a| a.powf(3.0));
        let b = suggest_band(&s).unwrap();
        assert_eq!(b.scale_lo, s.scales[0]);
        assert_eq!(b.scale_hi, s.scales[11]);
        assert!(b.runner_up.is_some());
    }

    #[test]
    fn broken_power_law_excludes_scales_above_knee() {
        // Slope 3 below a = 4, slope 0.5 above.
        let s = spectrum(|a: f64| if a <= 4.0 { a.powf(3.0) } else { 64.0 * (a / 4.0).powf(0.5) });
        let b = suggest_band(&s).unwrap();
        assert!(b.scale_hi <= 4.0, "{b:?}");
    }
}

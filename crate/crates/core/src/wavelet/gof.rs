use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::covariance::log_spectrum_covariance;
use super::{FractalEstimate, GofResult, ScaleSpectrum};
use crate::linalg::gls_line;
use crate::{Error, Result};

/// Chi-squared test of the power-law model for a scale spectrum.
///
/// The statistic is the generalized residual norm `rᵀ Γ⁻¹ r` of
/// `log S_N(a_i)` about its pseudo-GLS line, where `Γ` is the model
/// covariance of the log spectrum at `fit.h_hat`. Under the model it is
/// approximately chi-squared with `ℓ - 2` degrees of freedom.
pub fn goodness_of_fit(spectrum: &ScaleSpectrum, fit: &FractalEstimate, level: f64) -> Result<GofResult> {
    if spectrum.len() < 3 {
        return Err(Error::param("the goodness-of-fit test needs at least 3 scales"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::param(format!("test level must lie in (0, 1), got {level}")));
    }
    if spectrum.is_degenerate() {
        return Err(Error::Degenerate("zero wavelet variance at some scale".into()));
    }
    let cov = log_spectrum_covariance(spectrum, fit.h_hat)?;
    let line = gls_line(&spectrum.log_scales(), &spectrum.log_s_n(), &cov)?;
    let dof = spectrum.len() - 2;
    let statistic = line.chi2;
    let p_value =
        ChiSquared::new(dof as f64).map_err(|e| Error::Numerical(e.to_string()))?.sf(statistic).clamp(0.0, 1.0);
    Ok(GofResult { statistic, dof, p_value, level, accepted: p_value >= level })
}

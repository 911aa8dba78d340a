use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Straight-line fit `y ≈ intercept + slope · x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr_slope: f64,
    pub residuals: Vec<f64>,
    /// Residual sum of squares, weighted when weights are given.
    pub rss: f64,
    pub weights: Option<Vec<f64>>,
}

/// Least squares of `y` on `x`, optionally weighted.
///
/// With weights the slope variance is `σ̂² / Σ w (x - x̄_w)²` where
/// `σ̂² = Σ w r² / (n - 2)`.
pub fn line_fit(x: &[f64], y: &[f64], weights: Option<&[f64]>) -> Result<RegressionFit> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::param("x and y must have the same length"));
    }
    if n < 3 {
        return Err(Error::param("a line fit needs at least 3 points"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::param("regression inputs must be finite"));
    }
    let w: Vec<f64> = match weights {
        Some(w) if w.len() != n => return Err(Error::param("one weight per point is required")),
        Some(w) if w.iter().any(|v| !(*v > 0.0 && v.is_finite())) => {
            return Err(Error::param("weights must be positive and finite"))
        }
        Some(w) => w.to_vec(),
        None => vec![1.0; n],
    };
    let sw: f64 = w.iter().sum();
    let xm = w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() / sw;
    let ym = w.iter().zip(y).map(|(w, y)| w * y).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = x[i] - xm;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (y[i] - ym);
    }
    if !(sxx > 0.0) {
        return Err(Error::Degenerate("regression abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let residuals: Vec<f64> = x.iter().zip(y).map(|(x, y)| y - intercept - slope * x).collect();
    let rss: f64 = residuals.iter().zip(&w).map(|(r, w)| w * r * r).sum();
    let stderr_slope = (rss / (n as f64 - 2.0) / sxx).sqrt();
    Ok(RegressionFit { slope, intercept, stderr_slope, residuals, rss, weights: weights.map(|_| w) })
}

/// Least squares of `log y` on `log x`.
pub fn loglog_fit(x: &[f64], y: &[f64], weights: Option<&[f64]>) -> Result<RegressionFit> {
    if x.iter().chain(y).any(|v| !(*v > 0.0)) {
        return Err(Error::param("log-log regression needs strictly positive values"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    line_fit(&lx, &ly, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_law() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let f = loglog_fit(&x, &y, None).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!(f.rss < 1e-24 && f.stderr_slope < 1e-12);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn constant_response() {
        let f = loglog_fit(&[1.0, 3.0, 9.0], &[5.0, 5.0, 5.0], None).unwrap();
        assert_eq!(f.slope, 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(loglog_fit(&[1.0, 2.0, 0.0], &[1.0; 3], None), Err(Error::ParameterDomain(_))));
        assert!(loglog_fit(&[1.0, 2.0], &[1.0, 2.0], None).is_err());
        assert!(matches!(line_fit(&[1.0; 3], &[1.0, 2.0, 3.0], None), Err(Error::Degenerate(_))));
        assert!(line_fit(&[1.0, 2.0, 3.0], &[1.0; 3], Some(&[1.0, -1.0, 1.0])).is_err());
    }

    #[test]
    fn scaling_y_shifts_intercept() {
        let x = [1.0, 2.0, 3.0, 5.0];
        let y = [2.0, 3.5, 3.9, 7.0];
        let a = loglog_fit(&x, &y, None).unwrap();
        let y3: Vec<f64> = y.iter().map(|v| 3.0 * v).collect();
        let b = loglog_fit(&x, &y3, None).unwrap();
        assert!((a.slope - b.slope).abs() < 1e-12);
        assert!((b.intercept - a.intercept - 3f64.ln()).abs() < 1e-12);
    }
}

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Lower Cholesky factor of a symmetric positive-definite matrix.
pub(crate) fn cholesky(m: DMatrix<f64>) -> Result<DMatrix<f64>> {
    m.cholesky().map(|c| c.l()).ok_or_else(|| Error::Numerical("matrix is not positive definite".into()))
}

/// Generalized least squares of `y` on `[1, x]` with error covariance `cov`.
#[derive(Debug, Clone)]
pub(crate) struct GlsLine {
    pub intercept: f64,
    pub slope: f64,
    /// Variance of the slope, `[(X' C^-1 X)^-1]_{11}`.
    pub slope_var: f64,
    /// `r' C^-1 r`.
    pub chi2: f64,
}

pub(crate) fn gls_line(x: &[f64], y: &[f64], cov: &DMatrix<f64>) -> Result<GlsLine> {
    let n = x.len();
    let chol =
        cov.clone().cholesky().ok_or_else(|| Error::Numerical("scale covariance is not positive definite".into()))?;
    let design = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { x[i] });
    let yv = DVector::from_column_slice(y);
    let cinv_x = chol.solve(&design);
    let cinv_y = chol.solve(&yv);
    let normal = design.transpose() * &cinv_x;
    let normal_inv = normal.try_inverse().ok_or_else(|| Error::Degenerate("regression design is singular".into()))?;
    let beta = &normal_inv * (design.transpose() * cinv_y);
    let resid = yv - &design * &beta;
    let chi2 = resid.dot(&chol.solve(&resid));
    Ok(GlsLine { intercept: beta[0], slope: beta[1], slope_var: normal_inv[(1, 1)].max(0.0), chi2: chi2.max(0.0) })
}

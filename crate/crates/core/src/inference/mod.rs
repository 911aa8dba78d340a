//! Regression, hypothesis tests and the Monte Carlo comparison harness.

mod harness;
pub mod regression;

use statrs::distribution::{ContinuousCDF, StudentsT};

pub use harness::{table1_harness, table1_harness_with, HarnessSettings, MonteCarloReport, MonteCarloRow};
pub use regression::{line_fit, loglog_fit, RegressionFit};
pub use tests::{anova_f, mean_test, SampleComparison};

/// Quantile of Student's t with `dof` degrees of freedom (`dof ≥ 1`).
pub(crate) fn t_quantile(p: f64, dof: f64) -> f64 {
    StudentsT::new(0.0, 1.0, dof.max(1.0)).map(|t| t.inverse_cdf(p)).unwrap_or(f64::NAN)
}

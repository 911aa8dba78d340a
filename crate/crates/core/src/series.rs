use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Real samples on a uniform time grid `t0 + k * delta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformSeries {
    values: Vec<f64>,
    delta: f64,
    t0: f64,
}

impl UniformSeries {
    pub fn new(values: Vec<f64>, delta: f64, t0: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::param("series must be non-empty"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("sampling step must be positive, got {delta}")));
        }
        if !t0.is_finite() {
            return Err(Error::param("start time must be finite"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("sample {i} is not finite")));
        }
        Ok(Self { values, delta, t0 })
    }

    /// Unit step, zero start time.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1.0, 0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Time stamp of sample `k`.
    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.delta
    }

    /// Samples `lo..hi` as a new series starting at `time(lo)`.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi > self.len() {
            return Err(Error::Constraint(format!("invalid slice {lo}..{hi} of a series of length {}", self.len())));
        }
        Ok(Self { values: self.values[lo..hi].to_vec(), delta: self.delta, t0: self.time(lo) })
    }

    /// Same grid, new values. Used by transforms that preserve the time axis.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(values, self.delta, self.t0)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        (ss / self.len() as f64).sqrt()
    }
}

/// Additive trend evaluated on normalized time `u = k / N` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrendSpec {
    /// `c[0] + c[1] u + c[2] u^2 + ...`
    Polynomial { coefficients: Vec<f64> },
    /// `levels[j]` on `[breaks[j-1], breaks[j])`; `levels.len() == breaks.len() + 1`.
    PiecewiseConstant { levels: Vec<f64>, breaks: Vec<f64> },
}

impl TrendSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            TrendSpec::Polynomial { coefficients } => {
                if coefficients.is_empty() {
                    return Err(Error::param("polynomial trend needs at least one coefficient"));
                }
                if coefficients.iter().any(|c| !c.is_finite()) {
                    return Err(Error::param("polynomial coefficients must be finite"));
                }
            }
            TrendSpec::PiecewiseConstant { levels, breaks } => {
                if levels.len() != breaks.len() + 1 {
                    return Err(Error::param(format!(
                        "{} levels need {} breaks, got {}",
                        levels.len(),
                        levels.len().saturating_sub(1),
                        breaks.len()
                    )));
                }
                if levels.iter().any(|c| !c.is_finite()) {
                    return Err(Error::param("trend levels must be finite"));
                }
                let mut prev = 0.0;
                for &b in breaks {
                    if !(b > prev && b < 1.0) {
                        return Err(Error::param("break fractions must be strictly increasing inside (0, 1)"));
                    }
                    prev = b;
                }
            }
        }
        Ok(())
    }

    /// Trend value at normalized time `u`.
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            TrendSpec::Polynomial { coefficients } => coefficients.iter().rev().fold(0.0, |acc, c| acc * u + c),
            TrendSpec::PiecewiseConstant { levels, breaks } => {
                let j = breaks.iter().take_while(|&&b| u >= b).count();
                levels[j]
            }
        }
    }
}

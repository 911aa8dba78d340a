//! Long-range dependence analysis for uniformly sampled time series.
//!
//! The crate covers the full estimation chain:
//!
//! - [`synthesis`]: exact fractional Gaussian noise, locally fractional
//!   Gaussian noise and additive trends, used as ground truth;
//! - [`changepoint`]: exact dynamic-programming segmentation in mean and
//!   variance with an elbow rule on the contrast curve;
//! - [`dfa`]: detrended fluctuation analysis;
//! - [`wavelet`]: Fourier-band-limited wavelet scale spectra, Hurst
//!   estimation in stationary, self-similar and band-restricted modes, and a
//!   chi-squared goodness-of-fit test;
//! - [`inference`]: log-log regression, t and F tests, and the Monte Carlo
//!   harness comparing DFA against the wavelet estimator.
//!
//! Everything here is a pure function of its inputs (seeds included); file
//! formats and the command line live in the `lrdkit-cli` crate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod changepoint;
pub mod dfa;
mod error;
pub mod inference;
mod linalg;
pub mod rng;
mod series;
pub mod synthesis;
pub mod wavelet;

pub use error::{Error, Result};
pub use series::{TrendSpec, UniformSeries};
pub use wavelet::{EstimateMethod, FractalEstimate, GofResult};

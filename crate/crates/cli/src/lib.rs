//! Batch front end for `lrdkit`: reads heart-rate recordings or uniform
//! series, segments them into race phases, estimates the Hurst exponent of
//! each phase with DFA and wavelets, and writes JSON reports and plot data.

pub mod analyze;
pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod ingest;
pub mod resample;

pub use analyze::{analyze, compare_cohort, AnalysisReport, CohortReport, PhaseReport};
pub use config::AnalysisConfig;
pub use error::{CliError, CliResult};

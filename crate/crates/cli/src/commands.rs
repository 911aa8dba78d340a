//! Argument definitions and the implementation of each subcommand.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrdkit::changepoint::select_k;
use lrdkit::dfa::{default_windows, dfa_profile, estimate_h_dfa};
use lrdkit::inference::{table1_harness_with, HarnessSettings};
use lrdkit::synthesis::{aggregate, FgnSampler, LfgnSampler, SpectralProfile};
use lrdkit::wavelet::{
    band_scales, estimate_h_wavelet, geometric_scales, goodness_of_fit, Regression, ScaleSpectrum, SpectrumAnalyzer,
    SpectrumMode,
};
use lrdkit::{FractalEstimate, UniformSeries};
use rayon::prelude::*;
use serde::Serialize;

use crate::analyze::{analyze, compare_cohort, AnalysisReport};
use crate::config::AnalysisConfig;
use crate::emit::{cohort_text, dfa_csv, emit, series_csv, spectrum_csv, to_json, write_file};
use crate::error::{CliError, CliResult};
use crate::ingest::{read_rr_ms, read_uniform_csv, subject_id, InputFormat};
use crate::resample::{clean_and_resample, ResampleReport};

#[derive(Debug, Parser)]
#[command(name = "lrdkit", version, about = "Long-range dependence analysis of heart-rate series")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Master random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Analysis configuration (TOML, or JSON when the extension is .json).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "lrdkit-out")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate FGN or lfGN samples as a t,value table.
    Synth(SynthArgs),
    /// Detect change points and select the number of segments.
    Segment(InputArgs),
    /// Detrended fluctuation analysis.
    Dfa(InputArgs),
    /// Wavelet scale spectrum and Hurst estimate.
    Wavelet(WaveletArgs),
    /// Goodness-of-fit test of the power-law model.
    Gof(WaveletArgs),
    /// Full pipeline on one or more subjects.
    Analyze(AnalyzeArgs),
    /// Monte Carlo comparison of DFA and wavelet estimators on FGN.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fgn,
    Lfgn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lrd,
    Selfsimilar,
    Band,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegressionArg {
    Ols,
    Gls,
}

impl From<RegressionArg> for Regression {
    fn from(r: RegressionArg) -> Self {
        match r {
            RegressionArg::Ols => Regression::Ols,
            RegressionArg::Gls => Regression::Gls,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum, default_value = "fgn")]
    pub kind: Kind,
    #[arg(long)]
    pub hurst: f64,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// FGN variance, or the lfGN scale σ.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// lfGN band as `low,high`.
    #[arg(long, value_parser = parse_band, default_value = "0.2,4")]
    pub band: [f64; 2],
    /// lfGN exponent below the band.
    #[arg(long)]
    pub h_low: Option<f64>,
    /// lfGN exponent above the band.
    #[arg(long)]
    pub h_high: Option<f64>,
    /// Write the cumulative sum instead of the increments.
    #[arg(long)]
    pub aggregate: bool,
}

fn parse_band(text: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [lo, hi] = parts[..] else {
        return Err(format!("expected `low,high`, got {text:?}"));
    };
    let num = |v: &str| v.parse::<f64>().map_err(|_| format!("not a number: {v:?}"));
    Ok([num(lo)?, num(hi)?])
}

/// Command-line overrides of configuration values.
#[derive(Debug, Args, Default)]
pub struct Overrides {
    #[arg(long)]
    pub rate_hz: Option<f64>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub min_seg: Option<usize>,
    #[arg(long)]
    pub elbow_ratio: Option<f64>,
    /// Band as `low,high`.
    #[arg(long, value_parser = parse_band)]
    pub band: Option<[f64; 2]>,
    #[arg(long)]
    pub scale_count: Option<usize>,
    #[arg(long)]
    pub band_scale_count: Option<usize>,
    /// Comma-separated DFA window lengths.
    #[arg(long, value_delimiter = ',')]
    pub dfa_windows: Option<Vec<usize>>,
    #[arg(long)]
    pub gof_level: Option<f64>,
    #[arg(long, value_enum)]
    pub regression: Option<RegressionArg>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "uniform-csv")]
    pub format: InputFormat,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct WaveletArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "lrd")]
    pub mode: ModeArg,
    /// Analyse the cumulative sum of the input.
    #[arg(long)]
    pub aggregate: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "uniform-csv")]
    pub format: InputFormat,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Comma-separated true Hurst values.
    #[arg(long = "hurst", value_delimiter = ',', default_values_t = [0.5, 0.6, 0.7, 0.8, 0.9])]
    pub hurst: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, value_enum, default_value = "ols")]
    pub regression: RegressionArg,
}

fn resolve_config(global: &GlobalArgs, o: &Overrides) -> CliResult<AnalysisConfig> {
    let mut cfg = match &global.config {
        Some(p) => AnalysisConfig::load(p)?,
        None => AnalysisConfig::default(),
    };
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(v) = o.rate_hz {
        cfg.rate_hz = v;
    }
    if let Some(v) = o.k_max {
        cfg.k_max = v;
    }
    if let Some(v) = o.min_seg {
        cfg.changepoint.min_seg = v;
    }
    if let Some(v) = o.elbow_ratio {
        cfg.changepoint.elbow_ratio = v;
    }
    if let Some(b) = o.band {
        cfg.band = b;
    }
    if let Some(v) = o.scale_count {
        cfg.scale_count = v;
    }
    if let Some(v) = o.band_scale_count {
        cfg.band_scale_count = v;
    }
    if let Some(w) = &o.dfa_windows {
        cfg.dfa_windows = Some(w.clone());
    }
    if let Some(v) = o.gof_level {
        cfg.gof_level = v;
    }
    if let Some(r) = o.regression {
        cfg.regression = r.into();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_series(
    path: &Path,
    format: InputFormat,
    cfg: &AnalysisConfig,
) -> CliResult<(UniformSeries, Option<ResampleReport>)> {
    match format {
        InputFormat::UniformCsv => Ok((read_uniform_csv(path)?, None)),
        InputFormat::RrMs => {
            let rec = read_rr_ms(path)?;
            let (s, r) = clean_and_resample(&rec, cfg.rate_hz, &cfg.cleaning)?;
            Ok((s, Some(r)))
        }
    }
}

fn announce(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let out = cli.global.out.clone();
    match cli.command {
        Command::Synth(a) => synth(&a, cli.global.seed.unwrap_or(0), &out),
        Command::Segment(a) => segment(&cli.global, &a, &out),
        Command::Dfa(a) => dfa(&cli.global, &a, &out),
        Command::Wavelet(a) => wavelet(&cli.global, &a, &out, false),
        Command::Gof(a) => wavelet(&cli.global, &a, &out, true),
        Command::Analyze(a) => analyze_all(&cli.global, &a, &out),
        Command::Table1(a) => table1(&cli.global, &a, &out),
    }
}

#[derive(Serialize)]
struct SynthRecord<'a> {
    kind: &'a str,
    hurst: f64,
    n: usize,
    sigma: f64,
    delta: f64,
    band: Option<[f64; 2]>,
    h_low: Option<f64>,
    h_high: Option<f64>,
    aggregate: bool,
    seed: u64,
}

fn synth(a: &SynthArgs, seed: u64, out: &Path) -> CliResult<()> {
    let (series, band, h_low, h_high) = match a.kind {
        Kind::Fgn => {
            let s = FgnSampler::new(a.hurst, a.sigma, a.n)?.sample(seed);
            (UniformSeries::new(s.into_values(), a.delta, 0.0)?, None, None, None)
        }
        Kind::Lfgn => {
            let base = SpectralProfile::new(a.hurst, a.sigma, a.band[0], a.band[1])?;
            let h_low = a.h_low.unwrap_or(base.h_low);
            let h_high = a.h_high.unwrap_or(base.h_high);
            let profile = SpectralProfile::with_continuation(a.hurst, a.sigma, a.band[0], a.band[1], h_low, h_high)?;
            let s = LfgnSampler::new(&profile, a.n, a.delta)?.sample(seed);
            (s, Some(a.band), Some(h_low), Some(h_high))
        }
    };
    let series = if a.aggregate { aggregate(&series) } else { series };
    let record = SynthRecord {
        kind: if a.kind == Kind::Fgn { "fgn" } else { "lfgn" },
        hurst: a.hurst,
        n: a.n,
        sigma: a.sigma,
        delta: a.delta,
        band,
        h_low,
        h_high,
        aggregate: a.aggregate,
        seed,
    };
    announce(&[
        write_file(&out.join("series.csv"), &series_csv(&series))?,
        write_file(&out.join("synth.json"), &to_json(&record))?,
    ]);
    Ok(())
}

fn segment(g: &GlobalArgs, a: &InputArgs, out: &Path) -> CliResult<()> {
    let cfg = resolve_config(g, &a.overrides)?;
    let (series, _) = load_series(&a.input, a.format, &cfg)?;
    let scan = select_k(&series, cfg.k_max, &cfg.changepoint)?;
    let seg = scan.selected_segmentation();
    println!("K = {}, change points {:?}", seg.k, seg.taus);
    announce(&[
        write_file(&out.join("segments.json"), &to_json(seg))?,
        write_file(&out.join("scan.json"), &to_json(&scan))?,
    ]);
    Ok(())
}

#[derive(Serialize)]
struct EstimateRecord<'a> {
    input: String,
    mode: &'a str,
    aggregate: bool,
    estimate: &'a FractalEstimate,
}

fn print_estimate(label: &str, e: &FractalEstimate) {
    println!("{label}: H = {:.4} +/- {:.4} (slope {:.4})", e.h_hat, e.ci_halfwidth, e.slope);
}

fn dfa(g: &GlobalArgs, a: &InputArgs, out: &Path) -> CliResult<()> {
    let cfg = resolve_config(g, &a.overrides)?;
    let (series, _) = load_series(&a.input, a.format, &cfg)?;
    let windows = cfg.dfa_windows.clone().unwrap_or_else(|| default_windows(series.len()));
    let profile = dfa_profile(&series, &windows)?;
    let estimate = estimate_h_dfa(&profile)?;
    print_estimate("DFA", &estimate);
    let record =
        EstimateRecord { input: a.input.display().to_string(), mode: "dfa", aggregate: false, estimate: &estimate };
    announce(&[
        write_file(&out.join("dfa.csv"), &dfa_csv(&profile))?,
        write_file(&out.join("dfa.json"), &to_json(&record))?,
    ]);
    Ok(())
}

fn spectrum_for(
    series: &UniformSeries,
    mode: ModeArg,
    cfg: &AnalysisConfig,
    hi_exponent: f64,
) -> CliResult<ScaleSpectrum> {
    let delta = series.delta();
    let (scales, mode) = match mode {
        ModeArg::Band => {
            let [omega0, omega1] = cfg.band;
            (
                band_scales(&cfg.wavelet, omega0, omega1, delta, cfg.band_scale_count)?,
                SpectrumMode::Band { omega0, omega1 },
            )
        }
        m => {
            let hi = (series.len() as f64).powf(hi_exponent) * delta;
            if hi <= 4.0 * delta {
                return Err(CliError::Quality(format!("{} samples are too few for a scale spectrum", series.len())));
            }
            let mode = if m == ModeArg::Lrd { SpectrumMode::Lrd } else { SpectrumMode::Selfsimilar };
            (geometric_scales(4.0 * delta, hi, cfg.scale_count), mode)
        }
    };
    Ok(SpectrumAnalyzer::new(cfg.wavelet, &scales, delta, mode)?.spectrum(series)?)
}

fn wavelet(g: &GlobalArgs, a: &WaveletArgs, out: &Path, with_gof: bool) -> CliResult<()> {
    let cfg = resolve_config(g, &a.input.overrides)?;
    let (series, _) = load_series(&a.input.input, a.input.format, &cfg)?;
    let series = if a.aggregate { aggregate(&series) } else { series };
    // The goodness-of-fit test is calibrated on scales up to N^(1/3).
    let exponent = if with_gof { 1.0 / 3.0 } else { 0.4 };
    let spectrum = spectrum_for(&series, a.mode, &cfg, exponent)?;
    let mut estimate = estimate_h_wavelet(&spectrum, cfg.regression)?;
    let mut paths = vec![write_file(&out.join("spectrum.csv"), &spectrum_csv(&spectrum))?];
    if with_gof {
        let gof = goodness_of_fit(&spectrum, &estimate, cfg.gof_level)?;
        println!(
            "GOF: statistic {:.4} on {} dof, p = {:.4e}, {}",
            gof.statistic,
            gof.dof,
            gof.p_value,
            if gof.accepted { "accepted" } else { "rejected" }
        );
        estimate.gof = Some(gof);
    }
    print_estimate("wavelet", &estimate);
    let record = EstimateRecord {
        input: a.input.input.display().to_string(),
        mode: spectrum.mode.name(),
        aggregate: a.aggregate,
        estimate: &estimate,
    };
    let name = if with_gof { "gof.json" } else { "wavelet.json" };
    paths.push(write_file(&out.join(name), &to_json(&record))?);
    announce(&paths);
    Ok(())
}

/// Loads and analyses every subject, in parallel but in input order.
pub fn analyze_inputs(inputs: &[PathBuf], format: InputFormat, cfg: &AnalysisConfig) -> CliResult<Vec<AnalysisReport>> {
    let ids: Vec<String> = inputs.iter().map(|p| subject_id(p)).collect();
    if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
        return Err(CliError::Usage("input files must have distinct names".into()));
    }
    inputs
        .par_iter()
        .zip(&ids)
        .map(|(path, id)| {
            let (series, resampling) = load_series(path, format, cfg)?;
            analyze(id, &series, resampling, cfg)
        })
        .collect()
}

fn analyze_all(g: &GlobalArgs, a: &AnalyzeArgs, out: &Path) -> CliResult<()> {
    let cfg = resolve_config(g, &a.overrides)?;
    let reports = analyze_inputs(&a.inputs, a.format, &cfg)?;
    let mut paths = Vec::new();
    if let [report] = reports.as_slice() {
        paths.extend(emit(report, out)?);
        print!("{}", crate::emit::summary_text(report));
    } else {
        for r in &reports {
            paths.extend(emit(r, &out.join(&r.subject))?);
        }
        let cohort = compare_cohort(&reports);
        let text = cohort_text(&cohort);
        print!("{text}");
        paths.push(write_file(&out.join("cohort.json"), &to_json(&cohort))?);
        paths.push(write_file(&out.join("cohort.txt"), &text)?);
    }
    announce(&paths);
    Ok(())
}

fn table1(g: &GlobalArgs, a: &Table1Args, out: &Path) -> CliResult<()> {
    let seed = g.seed.unwrap_or(0);
    let settings = HarnessSettings { regression: a.regression.into(), ..HarnessSettings::default() };
    let report = table1_harness_with(&a.hurst, a.n, a.reps, seed, &settings)?;
    let text = report.to_text();
    print!("{text}");
    announce(&[
        write_file(&out.join("table1.txt"), &text)?,
        write_file(&out.join("table1.csv"), &report.to_csv())?,
        write_file(&out.join("table1.json"), &to_json(&report))?,
    ]);
    Ok(())
}

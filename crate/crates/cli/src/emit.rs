//! Report and plot-data writers. Output bytes depend only on the report, so
//! repeated runs produce identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lrdkit::dfa::DfaProfile;
use lrdkit::wavelet::ScaleSpectrum;
use lrdkit::UniformSeries;
use serde::Serialize;

use crate::analyze::{AnalysisReport, CohortReport, PhaseReport};
use crate::error::{CliError, CliResult};

/// Values in `series.csv` carry this many significant digits.
pub const SERIES_DIGITS: usize = 9;

pub fn write_file(path: &Path, contents: &str) -> CliResult<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))?;
    Ok(path.to_path_buf())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

fn sig(v: f64) -> String {
    format!("{:.*e}", SERIES_DIGITS - 1, v)
}

/// `t,value` table readable by the `uniform-csv` ingester.
pub fn series_csv(series: &UniformSeries) -> String {
    let mut out = String::from("t,value\n");
    for (k, v) in series.values().iter().enumerate() {
        let _ = writeln!(out, "{},{}", sig(series.time(k)), sig(*v));
    }
    out
}

pub fn spectrum_csv(spectrum: &ScaleSpectrum) -> String {
    let mut out = String::from("a,log_a,S,log_S,count\n");
    for i in 0..spectrum.len() {
        let (a, s) = (spectrum.scales[i], spectrum.s_n[i]);
        let _ = writeln!(out, "{a},{},{s},{},{}", a.ln(), s.ln(), spectrum.counts[i]);
    }
    out
}

pub fn dfa_csv(profile: &DfaProfile) -> String {
    let mut out = String::from("w,F\n");
    for (w, f) in profile.window_lengths.iter().zip(&profile.fluctuation) {
        let _ = writeln!(out, "{w},{f}");
    }
    out
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.digits$}"))
}

/// One row per phase: estimates, confidence half-widths and the GOF outcome.
pub fn summary_text(report: &AnalysisReport) -> String {
    let mut out = format!(
        "subject {}: {} samples, step {}, K = {}\n",
        report.subject,
        report.n_samples,
        report.delta,
        report.segmentation.as_ref().map_or_else(|| "failed".into(), |s| s.k.to_string())
    );
    let [w0, w1] = report.config.band;
    let _ = writeln!(out, "band [{w0}, {w1}]");
    let _ = writeln!(
        out,
        "{:<10} {:>7} {:>7} {:>8} {:>7} {:>8} {:>7} {:>9} {:>8}",
        "phase", "lo", "hi", "H_DFA", "+/-", "H_WAV", "+/-", "GOF p", "GOF"
    );
    for p in std::iter::once(&report.overall).chain(&report.phases) {
        if p.failed() {
            let _ = writeln!(out, "{:<10} {:>7} {:>7} failed", p.name, p.lo, p.hi);
            continue;
        }
        let dfa = p.dfa.as_ref().map(|d| &d.estimate);
        let wav = p.wavelet.as_ref().map(|w| &w.estimate);
        let gof = wav.and_then(|w| w.gof);
        let _ = writeln!(
            out,
            "{:<10} {:>7} {:>7} {:>8} {:>7} {:>8} {:>7} {:>9} {:>8}",
            p.name,
            p.lo,
            p.hi,
            fmt_opt(dfa.map(|e| e.h_hat), 4),
            fmt_opt(dfa.map(|e| e.ci_halfwidth), 4),
            fmt_opt(wav.map(|e| e.h_hat), 4),
            fmt_opt(wav.map(|e| e.ci_halfwidth), 4),
            gof.map_or_else(|| "-".into(), |g| format!("{:.3e}", g.p_value)),
            gof.map_or("-", |g| if g.accepted { "accepted" } else { "rejected" }),
        );
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn phase_files(p: &PhaseReport, dir: &Path, written: &mut Vec<PathBuf>) -> CliResult<()> {
    if let Some(w) = &p.wavelet {
        written.push(write_file(&dir.join(format!("spectrum_{}.csv", p.name)), &spectrum_csv(&w.spectrum))?);
    }
    if let Some(d) = &p.dfa {
        written.push(write_file(&dir.join(format!("dfa_{}.csv", p.name)), &dfa_csv(&d.profile))?);
    }
    Ok(())
}

/// Writes `report.json`, `segments.json`, `summary.txt`, and per-phase
/// `spectrum_<phase>.csv` and `dfa_<phase>.csv` files into `dir`.
pub fn emit(report: &AnalysisReport, dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut written = vec![
        write_file(&dir.join("report.json"), &to_json(report))?,
        write_file(&dir.join("segments.json"), &to_json(&report.segmentation))?,
        write_file(&dir.join("summary.txt"), &summary_text(report))?,
    ];
    for p in std::iter::once(&report.overall).chain(&report.phases) {
        phase_files(p, dir, &mut written)?;
    }
    Ok(written)
}

pub fn cohort_text(cohort: &CohortReport) -> String {
    let mut out = String::new();
    for c in &cohort.comparisons {
        let means: Vec<String> = c.group_means.iter().map(|m| format!("{m:.4}")).collect();
        let _ = write!(out, "{}: {} subjects, means [{}]", c.estimator, c.subjects.len(), means.join(", "));
        match (&c.comparison, &c.error) {
            (Some(a), _) => {
                let _ = writeln!(out, ", F = {:.4}, p = {:.4e}", a.f_statistic, a.p_value);
            }
            (None, Some(e)) => {
                let _ = writeln!(out, ", not computed: {e}");
            }
            _ => out.push('\n'),
        }
    }
    out
}

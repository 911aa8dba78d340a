//! Readers for the two supported input formats.
//!
//! `rr-ms` files hold one inter-beat interval in milliseconds per line; blank
//! lines and lines starting with `#` are skipped. `uniform-csv` files carry a
//! `t,value` header and a uniformly spaced time column.

use std::fs;
use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use lrdkit::UniformSeries;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    RrMs,
    UniformCsv,
}

/// Inter-beat intervals as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecording {
    pub subject: String,
    pub rr_ms: Vec<f64>,
    /// Source line of each interval, for reporting dropped rows.
    pub lines: Vec<usize>,
}

/// Subject identifier derived from a file name.
pub fn subject_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "subject".into())
}

pub fn read_rr_ms(path: &Path) -> CliResult<RawRecording> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_rr_ms(&text, &subject_id(path), &path.display().to_string())
}

pub fn parse_rr_ms(text: &str, subject: &str, source_name: &str) -> CliResult<RawRecording> {
    let mut rr_ms = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_error =
            |message: String| CliError::Parse { source_name: source_name.to_string(), line: i + 1, message };
        let v: f64 = line.parse().map_err(|_| parse_error(format!("not a number: {line:?}")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(parse_error(format!("interval must be positive and finite, got {v}")));
        }
        rr_ms.push(v);
        lines.push(i + 1);
    }
    if rr_ms.is_empty() {
        return Err(CliError::Quality(format!("{source_name}: no intervals found")));
    }
    Ok(RawRecording { subject: subject.to_string(), rr_ms, lines })
}

pub fn read_uniform_csv(path: &Path) -> CliResult<UniformSeries> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    parse_uniform_csv(file, &path.display().to_string())
}

/// Parses a `t,value` table. The step is taken from the first two times and
/// every later time must sit on that grid to within a thousandth of a step.
pub fn parse_uniform_csv<R: Read>(reader: R, source_name: &str) -> CliResult<UniformSeries> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let parse_error =
        |line: usize, message: String| CliError::Parse { source_name: source_name.to_string(), line, message };
    let headers = rdr.headers().map_err(|e| parse_error(1, e.to_string()))?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| parse_error(1, format!("missing column {name:?} in header")))
    };
    let (ti, vi) = (column("t")?, column("value")?);
    let mut times = Vec::new();
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |idx: usize, name: &str| -> CliResult<f64> {
            let text = record.get(idx).unwrap_or("");
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(parse_error(line, format!("{name} is not a finite number: {text:?}"))),
            }
        };
        times.push((field(ti, "t")?, line));
        values.push(field(vi, "value")?);
    }
    if values.len() < 2 {
        return Err(CliError::Quality(format!("{source_name}: at least two rows are required")));
    }
    let t0 = times[0].0;
    let delta = times[1].0 - t0;
    if delta.is_nan() || delta <= 0.0 {
        return Err(parse_error(times[1].1, format!("time step must be positive, got {delta}")));
    }
    for (k, &(t, line)) in times.iter().enumerate() {
        let expected = t0 + k as f64 * delta;
        if (t - expected).abs() > 1e-3 * delta {
            return Err(parse_error(line, format!("time {t} is off the uniform grid (expected {expected})")));
        }
    }
    Ok(UniformSeries::new(values, delta, t0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rr_lines_are_tracked() {
        let rec = parse_rr_ms("# header\n800\n\n810\n790\n", "s1", "mem").unwrap();
        assert_eq!(rec.rr_ms, vec![800.0, 810.0, 790.0]);
        assert_eq!(rec.lines, vec![2, 4, 5]);
    }

    #[test]
    fn rr_errors_name_the_line() {
        let err = parse_rr_ms("800\nabc\n", "s", "mem").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err}");
        let err = parse_rr_ms("800\n-5\n", "s", "mem").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        assert!(matches!(parse_rr_ms("\n# only\n", "s", "mem"), Err(CliError::Quality(_))));
    }

    #[test]
    fn csv_infers_step_and_origin() {
        let s = parse_uniform_csv("t,value\n10,1\n10.5,2\n11,3\n".as_bytes(), "mem").unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(s.delta(), 0.5);
        assert_eq!(s.t0(), 10.0);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let err = parse_uniform_csv("t,value\n0,1\n1,x\n".as_bytes(), "mem").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
        let err = parse_uniform_csv("t,value\n0,1\n1,2\n2.5,3\n".as_bytes(), "mem").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err}");
        let err = parse_uniform_csv("time,v\n0,1\n".as_bytes(), "mem").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
    }
}

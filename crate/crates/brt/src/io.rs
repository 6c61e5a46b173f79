//! Reading and writing signals and residual stacks as CSV.
//!
//! Signals travel as headerless numeric CSV, one sample per row: either a
//! single amplitude column (the rate must then come from the caller) or two
//! columns `time_seconds,amplitude` (the rate is inferred from the spacing,
//! which must be uniform to 1e-6 relative). Residual stacks use one header
//! line `t,r1,...,rn` followed by numeric rows.
//!
//! Floats are written with Rust's shortest round-trip formatting: parsing a
//! written value recovers the original bits exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::BrtError;
use crate::types::{BrtConfig, ResidualStack, Signal};

/// Relative tolerance for sampling-uniformity and rate-consistency checks.
/// Loose enough to absorb print/parse jitter of a time axis, tight enough to
/// reject genuinely non-uniform data.
const SPACING_REL_TOL: f64 = 1e-6;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BrtError + '_ {
    move |source| BrtError::IoError {
        path: path.to_path_buf(),
        source,
    }
}

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

/// Parses one CSV cell into a finite f64. `row` and `col` are 1-based and
/// refer to the file as written.
fn parse_cell(path: &Path, row: usize, col: usize, cell: &str) -> Result<f64, BrtError> {
    let parse_error = || BrtError::ParseError {
        path: path.to_path_buf(),
        row,
        col,
        found: cell.trim().to_string(),
    };
    let value: f64 = cell.trim().parse().map_err(|_| parse_error())?;
    // "nan" and "inf" parse as floats but are not data
    if !value.is_finite() {
        return Err(parse_error());
    }
    Ok(value)
}

/// Splits non-empty lines into fixed-width field rows, checking width
/// consistency. Returns (1-based row number, fields) pairs.
fn numeric_rows<'a>(
    path: &Path,
    text: &'a str,
    expected_width: usize,
) -> Result<Vec<(usize, Vec<&'a str>)>, BrtError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_width {
            return Err(BrtError::ParseError {
                path: path.to_path_buf(),
                row: idx + 1,
                col: expected_width.min(fields.len()) + 1,
                found: line.to_string(),
            });
        }
        rows.push((idx + 1, fields));
    }
    Ok(rows)
}

/// Infers the sample rate from a time column, enforcing uniform, strictly
/// increasing spacing. `times` must come paired with their 1-based rows.
fn infer_rate(path: &Path, times: &[(usize, f64)]) -> Result<f64, BrtError> {
    let n = times.len();
    debug_assert!(n >= 2);
    let mean_spacing = (times[n - 1].1 - times[0].1) / (n - 1) as f64;
    if !(mean_spacing.is_finite() && mean_spacing > 0.0) {
        return Err(BrtError::NonUniformSampling {
            path: path.to_path_buf(),
            row: times[n - 1].0,
        });
    }
    for pair in times.windows(2) {
        let spacing = pair[1].1 - pair[0].1;
        // `spacing > 0.0` is false for NaN too, pushing it into the error arm
        let uniform =
            spacing > 0.0 && (spacing - mean_spacing).abs() <= SPACING_REL_TOL * mean_spacing;
        if !uniform {
            return Err(BrtError::NonUniformSampling {
                path: path.to_path_buf(),
                row: pair[1].0,
            });
        }
    }
    Ok(1.0 / mean_spacing)
}

// ---------------------------------------------------------------------------
// signals
// ---------------------------------------------------------------------------

/// Loads a signal from CSV.
///
/// Column count decides the format: one column needs `rate_hz`, two columns
/// infer the rate from the time axis (and, if `rate_hz` is also given, the
/// two must agree to 1e-6 relative — the inferred rate wins).
pub fn load_signal(path: &Path, rate_hz: Option<f64>) -> Result<Signal, BrtError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let first_width = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(|l| l.split(',').count())
        .ok_or_else(|| BrtError::EmptyResult {
            what: format!("signal file {}", path.display()),
        })?;
    if first_width > 2 {
        return Err(BrtError::ParseError {
            path: path.to_path_buf(),
            row: 1,
            col: 3,
            found: "more than two columns".to_string(),
        });
    }

    let rows = numeric_rows(path, &text, first_width)?;
    if first_width == 1 {
        let rate = rate_hz.ok_or_else(|| BrtError::MissingSampleRate {
            path: path.to_path_buf(),
        })?;
        let mut samples = Vec::with_capacity(rows.len());
        for (row, fields) in rows {
            samples.push(parse_cell(path, row, 1, fields[0])?);
        }
        return Signal::new(samples, rate);
    }

    let mut times = Vec::with_capacity(rows.len());
    let mut samples = Vec::with_capacity(rows.len());
    for (row, fields) in &rows {
        times.push((*row, parse_cell(path, *row, 1, fields[0])?));
        samples.push(parse_cell(path, *row, 2, fields[1])?);
    }
    if times.len() < 2 {
        return Err(BrtError::SignalTooShort { len: times.len() });
    }
    let inferred = infer_rate(path, &times)?;
    if let Some(flag) = rate_hz {
        if (flag - inferred).abs() > SPACING_REL_TOL * inferred {
            return Err(BrtError::InconsistentSampleRate {
                path: path.to_path_buf(),
                flag_hz: flag,
                inferred_hz: inferred,
            });
        }
    }
    Signal::new(samples, inferred)
}

/// Writes a signal as two-column `time_seconds,amplitude` CSV (headerless),
/// so the file is self-describing on reload.
pub fn write_signal(signal: &Signal, path: &Path) -> Result<(), BrtError> {
    let rate = signal.sample_rate_hz();
    let mut out = String::with_capacity(signal.len() * 24);
    for (k, &s) in signal.samples().iter().enumerate() {
        writeln!(out, "{},{}", k as f64 / rate, s).expect("writing to a String cannot fail");
    }
    fs::write(path, out).map_err(io_err(path))
}

// ---------------------------------------------------------------------------
// residual stacks
// ---------------------------------------------------------------------------

/// Where [`write_stack`] puts the sidecar: `<stem>.config.json` next to the
/// stack file (`out/stack.csv` -> `out/stack.config.json`).
pub fn sidecar_config_path(stack_path: &Path) -> PathBuf {
    stack_path.with_extension("config.json")
}

/// Writes a stack as `t,r1,...,rn` CSV plus a sidecar JSON holding the
/// configuration that produced it.
pub fn write_stack(stack: &ResidualStack, config: &BrtConfig, path: &Path) -> Result<(), BrtError> {
    let n = stack.n_scales();
    let mut out = String::with_capacity(stack.source_length() * (n + 1) * 24);
    out.push('t');
    for j in 1..=n {
        write!(out, ",r{j}").expect("writing to a String cannot fail");
    }
    out.push('\n');
    let rate = stack.sample_rate_hz();
    for k in 0..stack.source_length() {
        write!(out, "{}", k as f64 / rate).expect("writing to a String cannot fail");
        for scale in stack.residuals() {
            write!(out, ",{}", scale.samples()[k]).expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(io_err(path))?;

    let json = serde_json::to_string_pretty(config).expect("config serialization is infallible");
    let sidecar = sidecar_config_path(path);
    fs::write(&sidecar, json).map_err(io_err(&sidecar))
}

/// Reads a stack written by [`write_stack`] (the sidecar is not needed).
pub fn read_stack(path: &Path) -> Result<ResidualStack, BrtError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").trim();
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 3 || columns[0] != "t" {
        return Err(BrtError::ParseError {
            path: path.to_path_buf(),
            row: 1,
            col: 1,
            found: header.to_string(),
        });
    }
    let n = columns.len() - 1;
    for (j, name) in columns[1..].iter().enumerate() {
        if *name != format!("r{}", j + 1) {
            return Err(BrtError::ParseError {
                path: path.to_path_buf(),
                row: 1,
                col: j + 2,
                found: (*name).to_string(),
            });
        }
    }

    let body_start = text.find('\n').map(|i| i + 1).unwrap_or(text.len());
    let rows = numeric_rows_offset(path, &text[body_start..], n + 1, 1)?;
    if rows.len() < 2 {
        return Err(BrtError::SignalTooShort { len: rows.len() });
    }
    let mut times = Vec::with_capacity(rows.len());
    let mut scales: Vec<Vec<f64>> = vec![Vec::with_capacity(rows.len()); n];
    for (row, fields) in &rows {
        times.push((*row, parse_cell(path, *row, 1, fields[0])?));
        for (j, cell) in fields[1..].iter().enumerate() {
            scales[j].push(parse_cell(path, *row, j + 2, cell)?);
        }
    }
    let rate = infer_rate(path, &times)?;
    let mut residuals = Vec::with_capacity(n);
    for buf in scales {
        residuals.push(Signal::new(buf, rate)?);
    }
    ResidualStack::new(residuals)
}

/// [`numeric_rows`] for text that starts `row_offset` lines into the file.
fn numeric_rows_offset<'a>(
    path: &Path,
    text: &'a str,
    expected_width: usize,
    row_offset: usize,
) -> Result<Vec<(usize, Vec<&'a str>)>, BrtError> {
    let rows = numeric_rows(path, text, expected_width)?;
    Ok(rows
        .into_iter()
        .map(|(row, fields)| (row + row_offset, fields))
        .collect())
}

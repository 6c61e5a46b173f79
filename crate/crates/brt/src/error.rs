//! Crate-wide error type.
//!
//! Every fallible operation returns [`BrtError`]. Variants carry enough
//! context to print a useful one-line diagnostic; the CLI maps them onto
//! exit codes (usage / data / numeric).

use std::error::Error;
use std::fmt;
use std::io;
use std::path::PathBuf;

/// Errors produced by signal construction, decomposition, denoising,
/// metrics, synthesis, benchmarking, and file I/O.
#[derive(Debug)]
pub enum BrtError {
    // ----- construction / configuration -----
    /// Signals need at least two samples.
    SignalTooShort { len: usize },
    /// A sample was NaN or infinite.
    NonFiniteSample { index: usize },
    /// Sample rates must be positive and finite.
    InvalidSampleRate { rate_hz: f64 },
    /// The decomposition needs at least two scales (one detail scale plus
    /// the coarse rest).
    ScaleCountTooSmall { requested: usize },
    /// Exactly `n_scales - 1` bandwidths are required, one per smoothing step.
    LambdaCountMismatch { expected: usize, got: usize },
    /// Kernel bandwidths must be positive, finite, and large enough that
    /// their square does not underflow to zero.
    NonPositiveLambda { index: usize, value: f64 },
    /// The window extent in seconds must be positive and finite.
    NonPositiveWindow { value: f64 },
    /// The window rounds to fewer than one sample at this rate.
    WindowTooSmall {
        window_seconds: f64,
        sample_rate_hz: f64,
    },
    /// A window radius of zero samples is meaningless.
    ZeroWindowRadius,
    /// Synthetic amplitudes must be positive and finite.
    InvalidAmplitude { value: f64 },
    /// A generator was handed a spec for a different waveform kind.
    SynthKindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    // ----- numeric conditions -----
    /// All kernel weights vanished at one output sample. Unreachable with a
    /// validated bandwidth (the center weight is always 1), kept as a guard.
    DegenerateWeights { index: usize },
    /// The baseline has zero power, so no SNR is defined against it.
    ZeroPowerBaseline,
    /// The two signals are identical, so the noise power is zero and the
    /// SNR is unbounded.
    IdenticalSignals,
    /// The denoised signal equals the baseline exactly; the improvement
    /// ratio is unbounded.
    PerfectDenoising,

    // ----- shape mismatches -----
    /// Paired operations need equal-length signals.
    MismatchedLengths { left: usize, right: usize },
    /// Scales of one stack must share a sample rate.
    MismatchedSampleRates { left_hz: f64, right_hz: f64 },
    /// An empty sequence has no median.
    EmptyInput,

    // ----- files -----
    /// A file held no data rows, or a sweep was configured with an empty grid.
    EmptyResult { what: String },
    /// A CSV cell failed to parse as a finite number. Rows and columns are
    /// 1-based and count data as written, including any header line.
    ParseError {
        path: PathBuf,
        row: usize,
        col: usize,
        found: String,
    },
    /// The time column is not uniformly spaced (or not increasing).
    NonUniformSampling { path: PathBuf, row: usize },
    /// Single-column files carry no time axis, so the rate must be given.
    MissingSampleRate { path: PathBuf },
    /// An explicit rate disagrees with the spacing of the time column.
    InconsistentSampleRate {
        path: PathBuf,
        flag_hz: f64,
        inferred_hz: f64,
    },
    /// Underlying filesystem failure.
    IoError { path: PathBuf, source: io::Error },

    // ----- benchmarking -----
    /// A pipeline error inside one sweep cell, tagged with the cell.
    SweepCell {
        snr_db: f64,
        n_scales: usize,
        lambda_mult: f64,
        trial: usize,
        source: Box<BrtError>,
    },
}

impl fmt::Display for BrtError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrtError::SignalTooShort { len } => {
                write!(f, "signal has {len} sample(s); at least 2 are required")
            }
            BrtError::NonFiniteSample { index } => {
                write!(f, "sample {index} is not finite")
            }
            BrtError::InvalidSampleRate { rate_hz } => {
                write!(f, "sample rate {rate_hz} Hz is not positive and finite")
            }
            BrtError::ScaleCountTooSmall { requested } => {
                write!(f, "{requested} scale(s) requested; the minimum is 2")
            }
            BrtError::LambdaCountMismatch { expected, got } => {
                write!(f, "expected {expected} bandwidth(s), got {got}")
            }
            BrtError::NonPositiveLambda { index, value } => {
                write!(f, "bandwidth {index} is {value}; it must be positive")
            }
            BrtError::NonPositiveWindow { value } => {
                write!(f, "window of {value} s is not positive and finite")
            }
            BrtError::WindowTooSmall {
                window_seconds,
                sample_rate_hz,
            } => write!(
                f,
                "window of {window_seconds} s rounds to zero samples at {sample_rate_hz} Hz"
            ),
            BrtError::ZeroWindowRadius => write!(f, "window radius must be at least 1 sample"),
            BrtError::InvalidAmplitude { value } => {
                write!(f, "amplitude {value} is not positive and finite")
            }
            BrtError::SynthKindMismatch { expected, got } => {
                write!(f, "generator for {expected} signals was given a {got} spec")
            }
            BrtError::DegenerateWeights { index } => {
                write!(f, "all kernel weights vanished at sample {index}")
            }
            BrtError::ZeroPowerBaseline => write!(f, "baseline signal has zero power"),
            BrtError::IdenticalSignals => {
                write!(f, "signals are identical; SNR is unbounded")
            }
            BrtError::PerfectDenoising => write!(
                f,
                "denoised signal equals the baseline exactly; improvement is unbounded"
            ),
            BrtError::MismatchedLengths { left, right } => {
                write!(f, "signal lengths differ: {left} vs {right}")
            }
            BrtError::MismatchedSampleRates { left_hz, right_hz } => {
                write!(f, "sample rates differ: {left_hz} Hz vs {right_hz} Hz")
            }
            BrtError::EmptyInput => write!(f, "input sequence is empty"),
            BrtError::EmptyResult { what } => write!(f, "{what} produced no data"),
            BrtError::ParseError {
                path,
                row,
                col,
                found,
            } => write!(
                f,
                "cannot parse {found:?} as a finite number at row {row}, column {col} of {}",
                path.display()
            ),
            BrtError::NonUniformSampling { path, row } => write!(
                f,
                "time column of {} is not uniformly increasing at row {row}",
                path.display()
            ),
            BrtError::MissingSampleRate { path } => write!(
                f,
                "{} has no time column; supply the sample rate explicitly",
                path.display()
            ),
            BrtError::InconsistentSampleRate {
                path,
                flag_hz,
                inferred_hz,
            } => write!(
                f,
                "declared rate {flag_hz} Hz disagrees with the {inferred_hz} Hz inferred from {}",
                path.display()
            ),
            BrtError::IoError { path, source } => {
                write!(f, "{}: {source}", path.display())
            }
            BrtError::SweepCell {
                snr_db,
                n_scales,
                lambda_mult,
                trial,
                source,
            } => write!(
                f,
                "sweep cell (snr {snr_db} dB, n {n_scales}, lambda mult {lambda_mult}), trial {trial}: {source}"
            ),
        }
    }
}

impl Error for BrtError {
    fn source(&self) -> Option<&(dyn Error + 'static)> {
        match self {
            BrtError::IoError { source, .. } => Some(source),
            BrtError::SweepCell { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

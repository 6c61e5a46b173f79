//! Core data types shared by every stage of the pipeline.
//!
//! A [`Signal`] is a uniformly sampled, finite, real-valued sequence tied to
//! its sample rate. [`BrtConfig`] bundles the decomposition parameters: how
//! many scales to produce, one kernel bandwidth per smoothing step, and the
//! half-width of the time window in seconds. [`ResidualStack`] holds the
//! output of the forward transform — `n` residual scales whose pointwise sum
//! reconstructs the source signal exactly.

use serde::{Deserialize, Serialize};

use crate::error::BrtError;

// ---------------------------------------------------------------------------
// Signal
// ---------------------------------------------------------------------------

/// Uniformly sampled signal: at least two finite samples at a positive rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl Signal {
    /// Wraps a sample buffer, rejecting anything the pipeline cannot process:
    /// fewer than two samples, a non-finite sample, or a bad rate.
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self, BrtError> {
        if samples.len() < 2 {
            return Err(BrtError::SignalTooShort { len: samples.len() });
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(BrtError::InvalidSampleRate {
                rate_hz: sample_rate_hz,
            });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(BrtError::NonFiniteSample { index });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    /// Constructor for buffers produced by the pipeline itself. Smoothing,
    /// differencing and thresholding preserve finiteness, so the validation
    /// scan is reduced to a debug assertion.
    pub(crate) fn from_computed(samples: Vec<f64>, sample_rate_hz: f64) -> Self {
        debug_assert!(samples.len() >= 2);
        debug_assert!(samples.iter().all(|s| s.is_finite()));
        Self {
            samples,
            sample_rate_hz,
        }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false: construction requires at least two samples.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Arithmetic mean of the samples.
    pub fn mean(&self) -> f64 {
        let sum: f64 = self.samples.iter().sum();
        sum / self.samples.len() as f64
    }

    /// Population variance (mean-removed mean square).
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        let sum: f64 = self.samples.iter().map(|s| (s - mu) * (s - mu)).sum();
        sum / self.samples.len() as f64
    }

    /// Population standard deviation; the conventional default bandwidth.
    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }
}

// ---------------------------------------------------------------------------
// Decomposition configuration
// ---------------------------------------------------------------------------

/// Parameters of one decomposition: scale count `n`, one bandwidth per
/// smoothing step (`n - 1` of them), and the half-width of the time window
/// in seconds. The window converts to a sample radius only once the signal's
/// rate is known; see [`BrtConfig::validate_for`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrtConfig {
    n_scales: usize,
    lambdas: Vec<f64>,
    window_seconds: f64,
}

impl BrtConfig {
    /// Builds a config with explicit per-step bandwidths.
    pub fn new(n_scales: usize, lambdas: Vec<f64>, window_seconds: f64) -> Result<Self, BrtError> {
        if n_scales < 2 {
            return Err(BrtError::ScaleCountTooSmall {
                requested: n_scales,
            });
        }
        if lambdas.len() != n_scales - 1 {
            return Err(BrtError::LambdaCountMismatch {
                expected: n_scales - 1,
                got: lambdas.len(),
            });
        }
        for (index, &value) in lambdas.iter().enumerate() {
            // `value * value > 0.0` also rejects bandwidths so small their
            // square underflows, which would poison the kernel exponent.
            if !(value.is_finite() && value > 0.0 && value * value > 0.0) {
                return Err(BrtError::NonPositiveLambda { index, value });
            }
        }
        if !(window_seconds.is_finite() && window_seconds > 0.0) {
            return Err(BrtError::NonPositiveWindow {
                value: window_seconds,
            });
        }
        Ok(Self {
            n_scales,
            lambdas,
            window_seconds,
        })
    }

    /// Builds a config with the same bandwidth at every step.
    pub fn uniform(n_scales: usize, lambda: f64, window_seconds: f64) -> Result<Self, BrtError> {
        let steps = n_scales.saturating_sub(1);
        Self::new(n_scales, vec![lambda; steps], window_seconds)
    }

    /// Builds a config with the conventional default bandwidth: the standard
    /// deviation of the input signal, replicated across all steps. Fails with
    /// `NonPositiveLambda` on constant signals (their deviation is zero).
    pub fn for_signal(
        signal: &Signal,
        n_scales: usize,
        window_seconds: f64,
    ) -> Result<Self, BrtError> {
        Self::uniform(n_scales, signal.std_dev(), window_seconds)
    }

    pub fn n_scales(&self) -> usize {
        self.n_scales
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn window_seconds(&self) -> f64 {
        self.window_seconds
    }

    /// Checks this config against a concrete signal and returns the effective
    /// window radius in samples: `round(window_seconds * sample_rate_hz)`,
    /// half away from zero. A window that rounds below one sample is rejected
    /// rather than clamped, so a successful return is always >= 1.
    pub fn validate_for(&self, signal: &Signal) -> Result<usize, BrtError> {
        let radius = (self.window_seconds * signal.sample_rate_hz()).round();
        if radius < 1.0 {
            return Err(BrtError::WindowTooSmall {
                window_seconds: self.window_seconds,
                sample_rate_hz: signal.sample_rate_hz(),
            });
        }
        Ok(radius as usize)
    }
}

// ---------------------------------------------------------------------------
// Residual stack
// ---------------------------------------------------------------------------

/// Output of the forward transform: residual scales 1..n of equal length and
/// rate. Scale `n` (the last) is the coarse rest; the pointwise sum of all
/// scales reproduces the source signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualStack {
    residuals: Vec<Signal>,
}

impl ResidualStack {
    /// Assembles a stack, enforcing shape consistency: at least two scales,
    /// all of the same length and sample rate.
    pub fn new(residuals: Vec<Signal>) -> Result<Self, BrtError> {
        if residuals.len() < 2 {
            return Err(BrtError::ScaleCountTooSmall {
                requested: residuals.len(),
            });
        }
        let len = residuals[0].len();
        let rate = residuals[0].sample_rate_hz();
        for scale in &residuals[1..] {
            if scale.len() != len {
                return Err(BrtError::MismatchedLengths {
                    left: len,
                    right: scale.len(),
                });
            }
            if scale.sample_rate_hz() != rate {
                return Err(BrtError::MismatchedSampleRates {
                    left_hz: rate,
                    right_hz: scale.sample_rate_hz(),
                });
            }
        }
        Ok(Self { residuals })
    }

    pub fn n_scales(&self) -> usize {
        self.residuals.len()
    }

    pub fn source_length(&self) -> usize {
        self.residuals[0].len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.residuals[0].sample_rate_hz()
    }

    pub fn residuals(&self) -> &[Signal] {
        &self.residuals
    }

    /// One scale by 0-based index (scale `j` of the usual 1-based notation is
    /// `residual(j - 1)`). Panics if out of range, like slice indexing.
    pub fn residual(&self, index: usize) -> &Signal {
        &self.residuals[index]
    }

    /// Pointwise sum of the scales from `from` (0-based) to the coarsest —
    /// the partially reconstructed, i.e. smoothed, iterate at that depth.
    /// `partial_reconstruction(0)` is the full inverse transform. Panics if
    /// `from` is out of range.
    pub fn partial_reconstruction(&self, from: usize) -> Signal {
        assert!(from < self.residuals.len(), "scale index out of range");
        let mut acc = vec![0.0f64; self.source_length()];
        for scale in &self.residuals[from..] {
            for (a, s) in acc.iter_mut().zip(scale.samples()) {
                *a += s;
            }
        }
        Signal::from_computed(acc, self.sample_rate_hz())
    }
}

// ---------------------------------------------------------------------------
// Reports and noise specs
// ---------------------------------------------------------------------------

/// What a denoising pass did: the threshold applied at each scale (0 where a
/// scale was left untouched), how many samples each threshold zeroed, and —
/// when a clean reference was available — the SNR improvement in dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenoiseReport {
    pub thresholds: Vec<f64>,
    pub zeroed_counts: Vec<usize>,
    pub snri_db: Option<f64>,
}

/// Target SNR and RNG seed for one noise injection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    target_snr_db: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(target_snr_db: f64, seed: u64) -> Result<Self, BrtError> {
        if !target_snr_db.is_finite() {
            return Err(BrtError::InvalidAmplitude {
                value: target_snr_db,
            });
        }
        Ok(Self {
            target_snr_db,
            seed,
        })
    }

    pub fn target_snr_db(&self) -> f64 {
        self.target_snr_db
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

// ---------------------------------------------------------------------------

//! Deterministic synthetic test signals.
//!
//! Two waveform families cover the two regimes a multi-scale denoiser must
//! handle: a smooth band-limited tone pair, and a piecewise-regular shape
//! full of edges. Both are pure functions of their [`SynthSpec`] — no hidden
//! state — so tests can freeze expected values.

use crate::error::BrtError;
use crate::types::Signal;

/// First tone of the periodic waveform, Hz.
pub const PERIODIC_F1_HZ: f64 = 1.7;
/// Second tone of the periodic waveform, Hz.
pub const PERIODIC_F2_HZ: f64 = 4.1;
/// Relative amplitude of the second tone.
pub const PERIODIC_TONE2_SCALE: f64 = 0.5;

/// Which waveform family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    /// Smooth two-tone waveform.
    Periodic,
    /// Plateaus, ramps, a sine burst, and step discontinuities.
    PiecewiseRegular,
}

impl SynthKind {
    fn name(&self) -> &'static str {
        match self {
            SynthKind::Periodic => "periodic",
            SynthKind::PiecewiseRegular => "piecewise-regular",
        }
    }
}

/// Parameters of one synthetic signal.
///
/// `seed` is carried for forward compatibility with randomized variants;
/// both current generators are fully deterministic and ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub length: usize,
    pub sample_rate_hz: f64,
    pub amplitude: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    /// Ten seconds at 128 Hz with unit amplitude: long enough that the
    /// periodic waveform covers exactly 17 and 41 whole cycles of its tones.
    fn default() -> Self {
        Self {
            kind: SynthKind::Periodic,
            length: 1280,
            sample_rate_hz: 128.0,
            amplitude: 1.0,
            seed: 0,
        }
    }
}

impl SynthSpec {
    fn validate(&self) -> Result<(), BrtError> {
        if self.length < 2 {
            return Err(BrtError::SignalTooShort { len: self.length });
        }
        if !(self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0) {
            return Err(BrtError::InvalidSampleRate {
                rate_hz: self.sample_rate_hz,
            });
        }
        if !(self.amplitude.is_finite() && self.amplitude > 0.0) {
            return Err(BrtError::InvalidAmplitude {
                value: self.amplitude,
            });
        }
        Ok(())
    }
}

/// Dispatches on `spec.kind`.
pub fn synthesize(spec: &SynthSpec) -> Result<Signal, BrtError> {
    match spec.kind {
        SynthKind::Periodic => periodic_signal(spec),
        SynthKind::PiecewiseRegular => piecewise_regular_signal(spec),
    }
}

/// Smooth two-tone waveform:
///
/// ```text
/// x(t) = amplitude * [ sin(2 pi 1.7 t) + 0.5 sin(2 pi 4.1 t) ]
/// ```
///
/// The incommensurate-looking tone pair avoids a visually repetitive beat
/// while |x| stays within 1.5 * amplitude.
pub fn periodic_signal(spec: &SynthSpec) -> Result<Signal, BrtError> {
    if spec.kind != SynthKind::Periodic {
        return Err(BrtError::SynthKindMismatch {
            expected: SynthKind::Periodic.name(),
            got: spec.kind.name(),
        });
    }
    spec.validate()?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let samples: Vec<f64> = (0..spec.length)
        .map(|k| {
            let t = k as f64 / spec.sample_rate_hz;
            spec.amplitude
                * ((two_pi * PERIODIC_F1_HZ * t).sin()
                    + PERIODIC_TONE2_SCALE * (two_pi * PERIODIC_F2_HZ * t).sin())
        })
        .collect();
    Signal::new(samples, spec.sample_rate_hz)
}

/// Piecewise-regular waveform: five equal-length segments whose boundaries
/// sit at k = floor(i * length / 5),
///
/// ```text
/// segment 1   plateau at  0.75 A
/// segment 2   linear ramp from -0.25 A up to 0.5 A
/// segment 3   one sine cycle,  0.5 A + 0.5 A sin(2 pi u),  u in [0, 1)
/// segment 4   plateau at -0.5 A
/// segment 5   linear ramp from -0.5 A back toward 0
/// ```
///
/// The jump from segment 1 into segment 2 (a full `A` drop) and from the
/// sine's tail onto the -0.5 A plateau give the waveform its two sharp
/// edges; [`piecewise_step_index`] locates the first one. Sample values
/// depend only on the index fractions k / length, so the shape is invariant
/// under resampling. Everything stays within [-0.5 A, A].
pub fn piecewise_regular_signal(spec: &SynthSpec) -> Result<Signal, BrtError> {
    if spec.kind != SynthKind::PiecewiseRegular {
        return Err(BrtError::SynthKindMismatch {
            expected: SynthKind::PiecewiseRegular.name(),
            got: spec.kind.name(),
        });
    }
    spec.validate()?;
    let len = spec.length;
    let a = spec.amplitude;
    let b1 = len / 5;
    let b2 = 2 * len / 5;
    let b3 = 3 * len / 5;
    let b4 = 4 * len / 5;
    let samples: Vec<f64> = (0..len)
        .map(|k| {
            if k < b1 {
                0.75 * a
            } else if k < b2 {
                let u = (k - b1) as f64 / (b2 - b1) as f64;
                -0.25 * a + 0.75 * a * u
            } else if k < b3 {
                let u = (k - b2) as f64 / (b3 - b2) as f64;
                0.5 * a + 0.5 * a * (2.0 * std::f64::consts::PI * u).sin()
            } else if k < b4 {
                -0.5 * a
            } else {
                let u = (k - b4) as f64 / (len - b4) as f64;
                -0.5 * a + 0.5 * a * u
            }
        })
        .collect();
    Signal::new(samples, spec.sample_rate_hz)
}

/// Index `k` of the last sample of the first plateau: the step
/// `|x[k + 1] - x[k]| = amplitude` sits between `k` and `k + 1`. Meaningful
/// for lengths of 10 and up (below that the layout degenerates).
pub fn piecewise_step_index(length: usize) -> usize {
    (length / 5).saturating_sub(1)
}

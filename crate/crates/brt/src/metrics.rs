//! Noise injection and signal-quality metrics.
//!
//! Power is the mean-removed mean square (the population variance), so DC
//! offsets carry no power. `snr_db` compares a clean baseline against a
//! corrupted copy; `snr_improvement` scores a denoiser by the ratio of error
//! energies before and after, in dB — positive means the denoiser helped.
//! White Gaussian noise is injected at an exact seeded power, which makes
//! every experiment in this crate reproducible bit for bit.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::BrtError;
use crate::types::{NoiseSpec, Signal};

/// Mean-removed power of a signal (population variance of its samples).
pub fn signal_power(signal: &Signal) -> f64 {
    signal.variance()
}

/// Adds white Gaussian noise sized to hit `spec.target_snr_db()` against the
/// baseline's power: `sigma^2 = power / 10^(snr/10)`. The noise stream is a
/// seeded ChaCha8 generator fed through the Marsaglia polar transform, so a
/// given `(baseline, spec)` pair always produces the identical corrupted
/// signal.
pub fn add_white_gaussian(baseline: &Signal, spec: &NoiseSpec) -> Result<Signal, BrtError> {
    let power = signal_power(baseline);
    if power == 0.0 {
        return Err(BrtError::ZeroPowerBaseline);
    }
    let sigma = (power / 10f64.powf(spec.target_snr_db() / 10.0)).sqrt();
    let mut source = NormalSource::new(spec.seed());
    let corrupted: Vec<f64> = baseline
        .samples()
        .iter()
        .map(|&s| s + sigma * source.next())
        .collect();
    // validate rather than trust: an extreme target SNR can overflow
    Signal::new(corrupted, baseline.sample_rate_hz())
}

/// Signal-to-noise ratio of `corrupted` against `baseline`, in dB:
/// `10 log10(power(baseline) / mean_square(corrupted - baseline))`.
pub fn snr_db(baseline: &Signal, corrupted: &Signal) -> Result<f64, BrtError> {
    if baseline.len() != corrupted.len() {
        return Err(BrtError::MismatchedLengths {
            left: baseline.len(),
            right: corrupted.len(),
        });
    }
    let power = signal_power(baseline);
    if power == 0.0 {
        return Err(BrtError::ZeroPowerBaseline);
    }
    let noise_power = mean_square_diff(corrupted, baseline);
    if noise_power == 0.0 {
        return Err(BrtError::IdenticalSignals);
    }
    Ok(10.0 * (power / noise_power).log10())
}

/// SNR improvement of a denoising pass, in dB:
/// `10 log10( sum (noisy - baseline)^2 / sum (denoised - baseline)^2 )`.
///
/// Exactly 0 when `denoised` is `noisy` unchanged. A denoised signal that
/// matches the baseline sample for sample has no finite score and errors
/// with `PerfectDenoising`. Degenerate in the other direction — `noisy`
/// equal to `baseline` while `denoised` is not — the ratio is zero and the
/// result is `-inf` dB, which is the honest answer rather than an error.
pub fn snr_improvement(
    noisy: &Signal,
    baseline: &Signal,
    denoised: &Signal,
) -> Result<f64, BrtError> {
    if noisy.len() != baseline.len() {
        return Err(BrtError::MismatchedLengths {
            left: noisy.len(),
            right: baseline.len(),
        });
    }
    if denoised.len() != baseline.len() {
        return Err(BrtError::MismatchedLengths {
            left: denoised.len(),
            right: baseline.len(),
        });
    }
    let before = energy_diff(noisy, baseline);
    let after = energy_diff(denoised, baseline);
    if after == 0.0 {
        return Err(BrtError::PerfectDenoising);
    }
    Ok(10.0 * (before / after).log10())
}

fn energy_diff(a: &Signal, b: &Signal) -> f64 {
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

fn mean_square_diff(a: &Signal, b: &Signal) -> f64 {
    energy_diff(a, b) / a.len() as f64
}

/// Standard normal stream: Marsaglia's polar method over seeded ChaCha8.
/// The polar transform yields pairs; the second variate is cached so no
/// draws are wasted and the stream is a pure function of the seed.
struct NormalSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalSource {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.random::<f64>() - 1.0;
            let v = 2.0 * self.rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let scale = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * scale);
                return u * scale;
            }
        }
    }
}

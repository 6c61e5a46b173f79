//! Multi-scale residual decomposition, denoising, and benchmarking for
//! uniformly sampled signals.
//!
//! The core idea: run an edge-preserving kernel smoother repeatedly, and at
//! each pass keep the *residual* — the detail the smoother just removed — as
//! one scale. After `n - 1` passes the surviving coarse iterate becomes the
//! final scale. Summing all scales telescopes back to the input exactly, so
//! the decomposition is perfectly invertible no matter which bandwidths were
//! used. Noise concentrates in the early scales, where a robust
//! (median-based) threshold can remove it without touching structure.
//!
//! Modules:
//!
//! * [`types`] — signals, configs, residual stacks, reports
//! * [`kernel`] — one windowed kernel-regression smoothing step
//! * [`transform`] — forward decomposition and exact inverse
//! * [`denoise`] — per-scale robust thresholds and the full pipeline
//! * [`metrics`] — seeded noise injection, SNR, SNR improvement
//! * [`synth`] — deterministic test waveforms
//! * [`sweep`] — reproducible Monte-Carlo benchmark grid
//! * [`io`] — CSV formats for signals and stacks
//!
//! ```
//! use brt::{denoise_signal, snr_improvement, add_white_gaussian};
//! use brt::{BrtConfig, NoiseSpec, SynthSpec, periodic_signal};
//!
//! let clean = periodic_signal(&SynthSpec::default()).unwrap();
//! let noisy = add_white_gaussian(&clean, &NoiseSpec::new(5.0, 7).unwrap()).unwrap();
//! let config = BrtConfig::for_signal(&noisy, 6, 0.1).unwrap();
//! let (denoised, report) = denoise_signal(&noisy, &config).unwrap();
//! assert_eq!(report.thresholds.len(), 6);
//! let gain_db = snr_improvement(&noisy, &clean, &denoised).unwrap();
//! assert!(gain_db > 0.0);
//! ```

pub mod denoise;
pub mod error;
pub mod io;
pub mod kernel;
pub mod metrics;
pub mod sweep;
pub mod synth;
pub mod transform;
pub mod types;

pub use denoise::{
    denoise_signal, denoise_signal_with, hard_threshold, mad, noise_threshold, DenoiseOptions,
    PROBIT_THREE_QUARTERS,
};
pub use error::BrtError;
pub use kernel::{nw_smooth, KernelStepParams};
pub use metrics::{add_white_gaussian, signal_power, snr_db, snr_improvement};
pub use sweep::{
    aggregates_to_json, default_snr_levels, derive_trial_seed, records_to_csv, run_sweep,
    summarize, CellAggregate, SweepConfig, SweepRecord, SweepResult, DEFAULT_BASE_SEED,
};
pub use synth::{
    periodic_signal, piecewise_regular_signal, piecewise_step_index, synthesize, SynthKind,
    SynthSpec,
};
pub use transform::{forward_brt, inverse_brt};
pub use types::{BrtConfig, DenoiseReport, NoiseSpec, ResidualStack, Signal};

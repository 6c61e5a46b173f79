//! Monte-Carlo benchmark: contaminate, denoise, score — across a grid of
//! input SNR levels, scale counts, and bandwidth multipliers.
//!
//! Reproducibility is the whole point of this module. Trial seeds are
//! derived from the base seed and the (baseline, level, trial) indices with
//! a fixed splitmix64 chain, so the same configuration always produces the
//! identical records, byte for byte, on any platform. Seeds deliberately do
//! *not* depend on the scale-count or multiplier axes: every grid cell
//! denoises the same noisy realizations, which turns cross-cell comparisons
//! into paired ones.

use std::fmt::Write as _;

use crate::denoise::denoise_signal;
use crate::error::BrtError;
use crate::metrics::{add_white_gaussian, snr_improvement};
use crate::types::{BrtConfig, NoiseSpec, Signal};

/// Library default base seed (the CLI also honors the `BRT_SEED` variable).
pub const DEFAULT_BASE_SEED: u64 = 42;

/// The default SNR grid: 11 levels evenly spaced from 12 dB down to 2.5 dB.
pub fn default_snr_levels() -> Vec<f64> {
    let (start, stop, count) = (12.0f64, 2.5f64, 11usize);
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Grid and bookkeeping for one sweep.
///
/// `lambda_multipliers` are in units of the *clean baseline's* standard
/// deviation: cell bandwidth = multiplier * sd(baseline). (Note the contrast
/// with [`BrtConfig::for_signal`], whose convention is the deviation of the
/// signal actually being denoised.)
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub snr_levels_db: Vec<f64>,
    pub trials_per_level: usize,
    pub scale_counts: Vec<usize>,
    pub lambda_multipliers: Vec<f64>,
    pub window_seconds: f64,
    pub base_seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            snr_levels_db: default_snr_levels(),
            trials_per_level: 20,
            scale_counts: vec![2, 3, 4, 5, 6],
            lambda_multipliers: vec![0.5, 1.0, 2.0],
            window_seconds: 0.1,
            base_seed: DEFAULT_BASE_SEED,
        }
    }
}

/// One contaminate-denoise-score measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub snr_db: f64,
    pub n_scales: usize,
    pub lambda_mult: f64,
    pub trial: usize,
    pub seed: u64,
    pub snri_db: f64,
}

/// Mean / spread of one grid cell. `std_snri_db` is the population standard
/// deviation, so a single-record cell reports 0 rather than NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellAggregate {
    pub snr_db: f64,
    pub n_scales: usize,
    pub lambda_mult: f64,
    pub mean_snri_db: f64,
    pub std_snri_db: f64,
    pub count: usize,
}

/// All records of a sweep plus their per-cell aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    pub aggregates: Vec<CellAggregate>,
}

/// Derives the seed of one trial from the base seed and grid position.
///
/// A chain of splitmix64 mixes, absorbing one index per round. Fixed for all
/// time: records written by one build must be reproducible by the next.
pub fn derive_trial_seed(
    base_seed: u64,
    baseline_idx: usize,
    level_idx: usize,
    trial_idx: usize,
) -> u64 {
    let mut seed = splitmix64(base_seed);
    seed = splitmix64(seed.wrapping_add(baseline_idx as u64));
    seed = splitmix64(seed.wrapping_add(level_idx as u64));
    seed = splitmix64(seed.wrapping_add(trial_idx as u64));
    seed
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs the full grid over the given clean baselines.
///
/// Record order is deterministic: level, then scale count, then multiplier,
/// then baseline, then trial — i.e. grouped by cell, with trials of each
/// baseline consecutive. The records CSV has no baseline column, so under
/// multiple baselines rows repeat trial indices within a cell and are
/// distinguished by their seed.
pub fn run_sweep(baselines: &[Signal], config: &SweepConfig) -> Result<SweepResult, BrtError> {
    if baselines.is_empty() {
        return Err(BrtError::EmptyInput);
    }
    for (what, empty) in [
        ("snr_levels_db", config.snr_levels_db.is_empty()),
        ("scale_counts", config.scale_counts.is_empty()),
        ("lambda_multipliers", config.lambda_multipliers.is_empty()),
        ("trials_per_level", config.trials_per_level == 0),
    ] {
        if empty {
            return Err(BrtError::EmptyResult {
                what: format!("sweep with empty {what}"),
            });
        }
    }

    let cells = config.scale_counts.len() * config.lambda_multipliers.len();
    let per_cell = baselines.len() * config.trials_per_level;
    let mut records = Vec::with_capacity(config.snr_levels_db.len() * cells * per_cell);

    for (level_idx, &snr_db) in config.snr_levels_db.iter().enumerate() {
        for &n_scales in &config.scale_counts {
            for &lambda_mult in &config.lambda_multipliers {
                for (baseline_idx, baseline) in baselines.iter().enumerate() {
                    let tag = |trial: usize| {
                        move |source: BrtError| BrtError::SweepCell {
                            snr_db,
                            n_scales,
                            lambda_mult,
                            trial,
                            source: Box::new(source),
                        }
                    };
                    let lambda = lambda_mult * baseline.std_dev();
                    let brt_config = BrtConfig::uniform(n_scales, lambda, config.window_seconds)
                        .map_err(tag(0))?;
                    for trial in 0..config.trials_per_level {
                        let seed =
                            derive_trial_seed(config.base_seed, baseline_idx, level_idx, trial);
                        let spec = NoiseSpec::new(snr_db, seed).map_err(tag(trial))?;
                        let noisy = add_white_gaussian(baseline, &spec).map_err(tag(trial))?;
                        let (denoised, _) =
                            denoise_signal(&noisy, &brt_config).map_err(tag(trial))?;
                        let snri_db =
                            snr_improvement(&noisy, baseline, &denoised).map_err(tag(trial))?;
                        records.push(SweepRecord {
                            snr_db,
                            n_scales,
                            lambda_mult,
                            trial,
                            seed,
                            snri_db,
                        });
                    }
                }
            }
        }
    }

    let aggregates = summarize(&records);
    Ok(SweepResult {
        records,
        aggregates,
    })
}

/// Groups records by cell (first-appearance order) and reduces each group to
/// mean, population standard deviation, and count.
pub fn summarize(records: &[SweepRecord]) -> Vec<CellAggregate> {
    let mut cells: Vec<(u64, usize, u64, Vec<f64>)> = Vec::new();
    for record in records {
        let key = (
            record.snr_db.to_bits(),
            record.n_scales,
            record.lambda_mult.to_bits(),
        );
        match cells.iter_mut().find(|(s, n, m, _)| (*s, *n, *m) == key) {
            Some((_, _, _, values)) => values.push(record.snri_db),
            None => cells.push((key.0, key.1, key.2, vec![record.snri_db])),
        }
    }
    cells
        .into_iter()
        .map(|(snr_bits, n_scales, mult_bits, values)| {
            let count = values.len();
            let mean = values.iter().sum::<f64>() / count as f64;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64;
            CellAggregate {
                snr_db: f64::from_bits(snr_bits),
                n_scales,
                lambda_mult: f64::from_bits(mult_bits),
                mean_snri_db: mean,
                std_snri_db: var.sqrt(),
                count,
            }
        })
        .collect()
}

/// Renders records as CSV with the fixed header
/// `snr_db,n_scales,lambda_mult,trial,seed,snri_db`. Floats use shortest
/// round-trip formatting, so re-parsing reproduces the exact values.
pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("snr_db,n_scales,lambda_mult,trial,seed,snri_db\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.snr_db, r.n_scales, r.lambda_mult, r.trial, r.seed, r.snri_db
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Renders aggregates as a JSON object keyed by cell, in record order:
///
/// ```text
/// { "snr=12|n=6|mult=1": { "mean_snri_db": ..., "std_snri_db": ..., "count": ... }, ... }
/// ```
pub fn aggregates_to_json(aggregates: &[CellAggregate]) -> String {
    let mut out = String::from("{\n");
    for (i, a) in aggregates.iter().enumerate() {
        let sep = if i + 1 == aggregates.len() { "" } else { "," };
        writeln!(
            out,
            "  \"snr={}|n={}|mult={}\": {{ \"mean_snri_db\": {}, \"std_snri_db\": {}, \"count\": {} }}{}",
            a.snr_db, a.n_scales, a.lambda_mult, a.mean_snri_db, a.std_snri_db, a.count, sep
        )
        .expect("writing to a String cannot fail");
    }
    out.push_str("}\n");
    out
}

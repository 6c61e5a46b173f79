//! Command-line front end.
//!
//! Five subcommands cover the pipeline end to end: `synth` makes test
//! signals, `decompose`/`reconstruct` move between signals and residual
//! stacks, `denoise` runs the full cleaning pass, and `bench` runs the
//! Monte-Carlo grid. Exit codes: 0 success, 2 usage or invalid parameter
//! values, 3 unreadable or malformed data, 4 degenerate numeric conditions.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use brt::{
    aggregates_to_json, denoise_signal_with, forward_brt, inverse_brt, periodic_signal,
    piecewise_regular_signal, records_to_csv, run_sweep, snr_improvement, BrtConfig, BrtError,
    DenoiseOptions, Signal, SweepConfig, SynthKind, SynthSpec, DEFAULT_BASE_SEED,
};

#[derive(Parser)]
#[command(
    name = "brt",
    version,
    about = "Multi-scale residual decomposition, denoising, and benchmarking for uniformly sampled signals",
    after_help = "Signal CSV: headerless; one amplitude column (pass --rate) or two columns time,amplitude.\n\
                  Exit codes: 0 ok, 2 usage, 3 data, 4 numeric."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a signal into residual scales (CSV stack plus a config sidecar)
    Decompose(DecomposeArgs),
    /// Sum the scales of a stack back into a signal
    Reconstruct(ReconstructArgs),
    /// Denoise a signal by per-scale robust thresholding
    Denoise(DenoiseArgs),
    /// Generate a synthetic test signal
    Synth(SynthArgs),
    /// Run the Monte-Carlo denoising benchmark grid
    Bench(BenchArgs),
}

#[derive(Args)]
struct SignalInput {
    /// Input signal CSV (one column: amplitude, or two columns: time,amplitude)
    #[arg(long)]
    input: PathBuf,
    /// Sample rate in Hz; required for single-column files, must agree with
    /// the time column of two-column files
    #[arg(long)]
    rate: Option<f64>,
}

#[derive(Args)]
struct TransformParams {
    /// Number of scales to produce (the last one is the coarse rest)
    #[arg(long, short = 'n', default_value_t = 6)]
    scales: usize,
    /// Half-width of the smoothing window, seconds
    #[arg(long, default_value_t = 0.1)]
    window: f64,
    /// Kernel bandwidths: one value for all steps, or a comma-separated list
    /// with one value per step; defaults to the input's standard deviation
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    lambda: Option<Vec<f64>>,
}

impl TransformParams {
    fn config_for(&self, signal: &Signal) -> Result<BrtConfig, BrtError> {
        match self.lambda.as_deref() {
            None => BrtConfig::for_signal(signal, self.scales, self.window),
            Some([single]) => BrtConfig::uniform(self.scales, *single, self.window),
            Some(list) => BrtConfig::new(self.scales, list.to_vec(), self.window),
        }
    }
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: SignalInput,
    #[command(flatten)]
    params: TransformParams,
    /// Output stack CSV; the config sidecar lands next to it
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Residual stack CSV produced by `decompose`
    #[arg(long)]
    stack: PathBuf,
    /// Output signal CSV (two columns: time,amplitude)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DenoiseArgs {
    #[command(flatten)]
    input: SignalInput,
    #[command(flatten)]
    params: TransformParams,
    /// Threshold the coarsest scale too (default keeps it intact)
    #[arg(long)]
    threshold_coarsest: bool,
    /// Clean reference signal; when given, the report carries the SNR
    /// improvement against it
    #[arg(long)]
    baseline: Option<PathBuf>,
    /// Output signal CSV
    #[arg(long)]
    out: PathBuf,
    /// Where to write the JSON report (thresholds, zeroed counts, SNRI)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Waveform family
    #[arg(long, value_parser = parse_kind, default_value = "periodic")]
    kind: SynthKind,
    /// Number of samples
    #[arg(long, default_value_t = 1280)]
    length: usize,
    /// Sample rate, Hz
    #[arg(long, default_value_t = 128.0)]
    rate: f64,
    /// Peak scale of the waveform
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Carried for randomized variants; current waveforms are deterministic
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output signal CSV
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Baselines: `synth:periodic`, `synth:piecewise`, or a signal CSV path;
    /// repeat or comma-separate for several
    #[arg(long, value_delimiter = ',', default_value = "synth:periodic")]
    baselines: Vec<String>,
    /// SNR grid as start:stop:count, evenly spaced in dB
    #[arg(long, value_parser = parse_levels, default_value = "12:2.5:11")]
    levels: Levels,
    /// Noise realizations per level
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Scale counts to sweep (comma-separated)
    #[arg(long, value_delimiter = ',', default_value = "6")]
    scales: Vec<usize>,
    /// Bandwidth multipliers, in units of each baseline's standard deviation
    #[arg(long, value_delimiter = ',', default_value = "1")]
    multipliers: Vec<f64>,
    /// Half-width of the smoothing window, seconds
    #[arg(long, default_value_t = 0.1)]
    window: f64,
    /// Base seed; defaults to the BRT_SEED environment variable, then 42
    #[arg(long)]
    seed: Option<u64>,
    /// Sample rate for synthetic baselines and single-column files, Hz
    #[arg(long, default_value_t = 128.0)]
    rate: f64,
    /// Length of synthetic baselines, samples
    #[arg(long, default_value_t = 1280)]
    length: usize,
    /// Where to write the per-trial records CSV
    #[arg(long, default_value = "records.csv")]
    records: PathBuf,
    /// Where to write the per-cell aggregates JSON
    #[arg(long, default_value = "aggregates.json")]
    aggregates: PathBuf,
}

#[derive(Clone, Debug)]
struct Levels(Vec<f64>);

fn parse_kind(text: &str) -> Result<SynthKind, String> {
    match text {
        "periodic" => Ok(SynthKind::Periodic),
        "piecewise" | "piecewise-regular" => Ok(SynthKind::PiecewiseRegular),
        other => Err(format!(
            "unknown waveform {other:?} (expected periodic or piecewise)"
        )),
    }
}

fn parse_levels(text: &str) -> Result<Levels, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err("expected start:stop:count".to_string());
    };
    let start: f64 = start.parse().map_err(|_| format!("bad start {start:?}"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("bad stop {stop:?}"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count {count:?}"))?;
    if count == 0 {
        return Err("count must be at least 1".to_string());
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err("levels must be finite".to_string());
    }
    if count == 1 {
        return Ok(Levels(vec![start]));
    }
    Ok(Levels(
        (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose(args) => run_decompose(args),
        Command::Reconstruct(args) => run_reconstruct(args),
        Command::Denoise(args) => run_denoise(args),
        Command::Synth(args) => run_synth(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

/// Maps error variants onto the documented exit classes.
fn exit_class(err: &BrtError) -> u8 {
    use BrtError::*;
    match err {
        // parameter values that can never work: usage
        ScaleCountTooSmall { .. }
        | LambdaCountMismatch { .. }
        | NonPositiveLambda { .. }
        | NonPositiveWindow { .. }
        | WindowTooSmall { .. }
        | ZeroWindowRadius
        | InvalidAmplitude { .. }
        | SynthKindMismatch { .. }
        | InvalidSampleRate { .. } => 2,
        // unreadable, malformed, or shape-inconsistent data
        IoError { .. }
        | ParseError { .. }
        | NonUniformSampling { .. }
        | MissingSampleRate { .. }
        | InconsistentSampleRate { .. }
        | EmptyResult { .. }
        | SignalTooShort { .. }
        | NonFiniteSample { .. }
        | EmptyInput
        | MismatchedLengths { .. }
        | MismatchedSampleRates { .. } => 3,
        // numerically degenerate conditions
        DegenerateWeights { .. } | ZeroPowerBaseline | IdenticalSignals | PerfectDenoising => 4,
        SweepCell { source, .. } => exit_class(source),
    }
}

fn load_input(input: &SignalInput) -> Result<Signal, BrtError> {
    brt::io::load_signal(&input.input, input.rate)
}

fn run_decompose(args: DecomposeArgs) -> Result<(), BrtError> {
    let signal = load_input(&args.input)?;
    let config = args.params.config_for(&signal)?;
    let stack = forward_brt(&signal, &config)?;
    brt::io::write_stack(&stack, &config, &args.out)?;
    eprintln!(
        "decomposed {} samples into {} scales -> {}",
        signal.len(),
        stack.n_scales(),
        args.out.display()
    );
    Ok(())
}

fn run_reconstruct(args: ReconstructArgs) -> Result<(), BrtError> {
    let stack = brt::io::read_stack(&args.stack)?;
    let signal = inverse_brt(&stack)?;
    brt::io::write_signal(&signal, &args.out)?;
    eprintln!(
        "reconstructed {} samples from {} scales -> {}",
        signal.len(),
        stack.n_scales(),
        args.out.display()
    );
    Ok(())
}

fn run_denoise(args: DenoiseArgs) -> Result<(), BrtError> {
    let noisy = load_input(&args.input)?;
    let config = args.params.config_for(&noisy)?;
    let options = DenoiseOptions {
        threshold_coarsest: args.threshold_coarsest,
    };
    let (denoised, mut report) = denoise_signal_with(&noisy, &config, options)?;
    if let Some(baseline_path) = &args.baseline {
        let baseline = brt::io::load_signal(baseline_path, args.input.rate)?;
        report.snri_db = Some(snr_improvement(&noisy, &baseline, &denoised)?);
    }
    brt::io::write_signal(&denoised, &args.out)?;
    if let Some(report_path) = &args.report {
        let json =
            serde_json::to_string_pretty(&report).expect("report serialization is infallible");
        std::fs::write(report_path, json).map_err(|source| BrtError::IoError {
            path: report_path.clone(),
            source,
        })?;
    }
    let zeroed: usize = report.zeroed_counts.iter().sum();
    match report.snri_db {
        Some(snri) => eprintln!(
            "denoised {} samples ({} zeroed, SNRI {snri:.3} dB) -> {}",
            noisy.len(),
            zeroed,
            args.out.display()
        ),
        None => eprintln!(
            "denoised {} samples ({} zeroed) -> {}",
            noisy.len(),
            zeroed,
            args.out.display()
        ),
    }
    Ok(())
}

fn run_synth(args: SynthArgs) -> Result<(), BrtError> {
    let spec = SynthSpec {
        kind: args.kind,
        length: args.length,
        sample_rate_hz: args.rate,
        amplitude: args.amplitude,
        seed: args.seed,
    };
    let signal = brt::synthesize(&spec)?;
    brt::io::write_signal(&signal, &args.out)?;
    eprintln!(
        "generated {} samples at {} Hz -> {}",
        signal.len(),
        signal.sample_rate_hz(),
        args.out.display()
    );
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), BrtError> {
    let mut baselines = Vec::with_capacity(args.baselines.len());
    for spec in &args.baselines {
        baselines.push(resolve_baseline(spec, args.rate, args.length)?);
    }
    let base_seed = args
        .seed
        .or_else(seed_from_env)
        .unwrap_or(DEFAULT_BASE_SEED);
    let config = SweepConfig {
        snr_levels_db: args.levels.0.clone(),
        trials_per_level: args.trials,
        scale_counts: args.scales.clone(),
        lambda_multipliers: args.multipliers.clone(),
        window_seconds: args.window,
        base_seed,
    };
    let result = run_sweep(&baselines, &config)?;
    std::fs::write(&args.records, records_to_csv(&result.records)).map_err(|source| {
        BrtError::IoError {
            path: args.records.clone(),
            source,
        }
    })?;
    std::fs::write(&args.aggregates, aggregates_to_json(&result.aggregates)).map_err(|source| {
        BrtError::IoError {
            path: args.aggregates.clone(),
            source,
        }
    })?;
    eprintln!(
        "swept {} cells, {} records (seed {base_seed}) -> {}, {}",
        result.aggregates.len(),
        result.records.len(),
        args.records.display(),
        args.aggregates.display()
    );
    Ok(())
}

fn seed_from_env() -> Option<u64> {
    let text = std::env::var("BRT_SEED").ok()?;
    match text.trim().parse() {
        Ok(seed) => Some(seed),
        Err(_) => {
            eprintln!("warning: ignoring unparseable BRT_SEED={text:?}");
            None
        }
    }
}

/// `synth:periodic` / `synth:piecewise` or a CSV path.
fn resolve_baseline(spec: &str, rate: f64, length: usize) -> Result<Signal, BrtError> {
    match spec {
        "synth:periodic" => periodic_signal(&SynthSpec {
            kind: SynthKind::Periodic,
            length,
            sample_rate_hz: rate,
            amplitude: 1.0,
            seed: 0,
        }),
        "synth:piecewise" | "synth:piecewise-regular" => piecewise_regular_signal(&SynthSpec {
            kind: SynthKind::PiecewiseRegular,
            length,
            sample_rate_hz: rate,
            amplitude: 1.0,
            seed: 0,
        }),
        path => brt::io::load_signal(std::path::Path::new(path), Some(rate)),
    }
}

//! Command-line front end: matrix generation, probability queries, full
//! distributions, chain sampling, verification suites, and cost-curve CSVs.
//!
//! Exit codes: 0 success, 2 I/O, 3 validation, 4 capacity, 5 initialization.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bosonfft::Error;

#[derive(Parser)]
#[command(name = "bosonfft", version, about = "Boson-sampling probabilities via spectral harmonics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FsMode {
    Reduced,
    Nyquist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

/// Where the interferometer matrix comes from: a JSON file or a fresh
/// seeded Haar draw.
#[derive(Args)]
struct UnitarySource {
    /// Path to a unitary JSON file ({"n", "re", "im"}).
    #[arg(long, value_name = "PATH", conflicts_with = "haar")]
    unitary: Option<PathBuf>,

    /// Draw an n×n Haar-random unitary instead (uses --seed).
    #[arg(long, value_name = "N")]
    haar: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Haar-random unitary and write it as JSON.
    Haar {
        /// Mode count.
        #[arg(long)]
        n: usize,
        /// RNG seed; the matrix is a pure function of (n, seed).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
    },

    /// Probability of one output state.
    Prob {
        #[command(flatten)]
        source: UnitarySource,
        /// Input occupation, e.g. 1,1,0.
        #[arg(long)]
        input: String,
        /// Target output occupation.
        #[arg(long)]
        target: String,
        /// Frequency assignment: 1 = positional (full spectrum),
        /// 2 = target-adapted (single coefficient).
        #[arg(long, default_value_t = 2)]
        method: u8,
        /// Sampling rate for method 2.
        #[arg(long, value_enum, default_value_t = FsMode::Reduced)]
        fs_mode: FsMode,
        /// Seed for --haar.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional JSON result file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stored-sample budget for the full-spectrum path (method 1).
        #[arg(long, default_value_t = bosonfft::fourier::DEFAULT_SPECTRUM_SAMPLE_LIMIT)]
        max_samples: u64,
        /// Streamed-sample budget for the projection path (method 2).
        #[arg(long, default_value_t = bosonfft::fourier::DEFAULT_PROJECTION_SAMPLE_LIMIT)]
        max_streamed: u64,
    },

    /// Exact distribution over all output states.
    Dist {
        #[command(flatten)]
        source: UnitarySource,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Use the classic 2·f_max sampling rate instead of f_max + 1.
        #[arg(long)]
        nyquist: bool,
        /// Also dump the raw spectrum (bin,re,im,abs) to this CSV.
        #[arg(long)]
        spectrum_out: Option<PathBuf>,
        #[arg(long, default_value_t = bosonfft::fourier::DEFAULT_SPECTRUM_SAMPLE_LIMIT)]
        max_samples: u64,
    },

    /// Approximate the distribution with a Metropolis-Hastings chain.
    Sample {
        #[command(flatten)]
        source: UnitarySource,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 200_000)]
        steps: u64,
        /// Defaults to steps/10.
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Checkpoint steps for convergence tracking, e.g. 1000,10000.
        /// Defaults to powers of ten up to the step count.
        #[arg(long)]
        checkpoints: Option<String>,
        /// Outcome-count ceiling for computing the exact reference
        /// distribution; larger systems get an empirical-only report.
        #[arg(long, default_value_t = 1 << 16)]
        exact_limit: u128,
    },

    /// Run the oracle-equivalence, separation-theorem, normalization, and
    /// reduced-rate verification suites.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_m: u32,
        /// Random reduced-vs-Nyquist cases.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Emit the weighted-average-complexity ratio curve and the speedup
    /// table as CSVs.
    Bench {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Haar matrices averaged per mode count.
        #[arg(long, default_value_t = 1)]
        average: u32,
        #[arg(long, default_value = "ratio.csv")]
        ratio_out: PathBuf,
        #[arg(long, default_value = "speedup.csv")]
        speedup_out: PathBuf,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Io { .. } | Error::Malformed { .. } => 2,
        Error::Capacity(_) => 4,
        Error::ChainInit(_) => 5,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Haar { n, seed, out } => commands::haar(n, seed, &out),
        Command::Prob {
            source,
            input,
            target,
            method,
            fs_mode,
            seed,
            out,
            max_samples,
            max_streamed,
        } => commands::prob(
            &source,
            &input,
            &target,
            method,
            fs_mode,
            seed,
            out.as_deref(),
            max_samples,
            max_streamed,
        ),
        Command::Dist {
            source,
            input,
            seed,
            out,
            format,
            nyquist,
            spectrum_out,
            max_samples,
        } => commands::dist(
            &source,
            &input,
            seed,
            &out,
            format,
            nyquist,
            spectrum_out.as_deref(),
            max_samples,
        ),
        Command::Sample {
            source,
            input,
            steps,
            burn_in,
            seed,
            out,
            checkpoints,
            exact_limit,
        } => commands::sample(
            &source,
            &input,
            steps,
            burn_in,
            seed,
            &out,
            checkpoints.as_deref(),
            exact_limit,
        ),
        Command::Verify {
            max_n,
            max_m,
            trials,
            tol,
            seed,
        } => commands::verify(max_n, max_m, trials, tol, seed),
        Command::Bench {
            n_min,
            n_max,
            seed,
            average,
            ratio_out,
            speedup_out,
        } => commands::bench(n_min, n_max, seed, average, &ratio_out, &speedup_out),
    };
    match outcome {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}

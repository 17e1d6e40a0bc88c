//! `frechet-sn`: self-normalized two-sample and change-point tests for time
//! series of distributions, functions, covariance matrices and graphs.
//!
//! Reports are JSON on standard output (or `--output`). Exit status is 0 when
//! a command completes, 3 when the input is degenerate (the self-normalizer
//! vanishes), 1 on errors and 2 on usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frechet_sn::changepoint::CpVariant;
use frechet_sn::io::{FormatHints, RecordFormat, RunConfig, SpaceKind};
use frechet_sn::null_dist::CACHE_ENV;
use frechet_sn::two_sample::TestVariant;

pub const EXIT_ERROR: u8 = 1;
pub const EXIT_DEGENERATE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "frechet-sn",
    version,
    about = "Self-normalized inference for series of metric-space objects"
)]
struct Cli {
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

/// Overrides for [`RunConfig`]; anything given here beats the config file.
#[derive(Debug, Args)]
struct Settings {
    /// TOML file with run settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for cached null distributions.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Trimming of the two-sample profiles.
    #[arg(long, global = true)]
    eta: Option<f64>,
    /// Split trimming of the change-point scan.
    #[arg(long, global = true)]
    eta1: Option<f64>,
    /// Inner trimming of the change-point self-normalizer.
    #[arg(long, global = true)]
    eta2: Option<f64>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Two-sample statistic.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    variant: Option<VariantArg>,
    /// Change-point statistic.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    cp_variant: Option<CpVariantArg>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Brownian grid size of the null simulation.
    #[arg(long, global = true)]
    null_grid: Option<usize>,
    /// Number of null draws.
    #[arg(long, global = true)]
    null_reps: Option<usize>,
    #[arg(long, global = true)]
    wbs_intervals: Option<usize>,
    #[arg(long, global = true)]
    wbs_calibration_reps: Option<usize>,
    #[arg(long, global = true)]
    wbs_min_len: Option<usize>,
    #[arg(long, global = true)]
    wbs_quantile: Option<f64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl Settings {
    fn resolve(&self) -> frechet_sn::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field { $target = v.into(); })*
            };
        }
        set!(
            eta => cfg.eta,
            eta1 => cfg.eta1,
            eta2 => cfg.eta2,
            alpha => cfg.alpha,
            variant => cfg.variant,
            cp_variant => cfg.cp_variant,
            seed => cfg.seed,
            null_grid => cfg.null_grid,
            null_reps => cfg.null_reps,
            wbs_intervals => cfg.wbs.intervals,
            wbs_calibration_reps => cfg.wbs.calibration_reps,
            wbs_min_len => cfg.wbs.min_len,
            wbs_quantile => cfg.wbs.quantile,
        );
        if self.cache_dir.is_some() {
            cfg.cache_dir.clone_from(&self.cache_dir);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    D1,
    D2,
}

impl From<VariantArg> for TestVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::D1 => TestVariant::D1,
            VariantArg::D2 => TestVariant::D2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CpVariantArg {
    Sn1,
    Sn2,
}

impl From<CpVariantArg> for CpVariant {
    fn from(v: CpVariantArg) -> Self {
        match v {
            CpVariantArg::Sn1 => CpVariant::SN1,
            CpVariantArg::Sn2 => CpVariant::SN2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Two-sample null, trimmed at --eta.
    Deta,
    /// Change-point null, trimmed at --eta1 and --eta2.
    Seta,
}

/// How to read input series. Each option overrides the file header.
#[derive(Debug, Clone, Default, Args)]
struct InputFormat {
    /// Object space: scalar, function, wasserstein, frobenius, log-euclidean or laplacian.
    #[arg(long)]
    kind: Option<SpaceKind>,
    /// Quantile or function grid size.
    #[arg(long)]
    grid: Option<usize>,
    /// Matrix dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Smallest admissible eigenvalue for log-Euclidean matrices.
    #[arg(long)]
    floor: Option<f64>,
    /// Row format: `values` or `samples` (raw draws of a distribution).
    #[arg(long = "record-format")]
    format: Option<RecordFormat>,
    /// Probability levels of tabulated quantile rows, comma separated.
    #[arg(long, value_delimiter = ',')]
    probs: Option<Vec<f64>>,
}

impl InputFormat {
    fn hints(&self) -> FormatHints {
        FormatHints {
            kind: self.kind,
            grid: self.grid,
            dim: self.dim,
            floor: self.floor,
            format: self.format,
            probs: self.probs.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test whether two series have the same Frechet mean and variance.
    TwoSample {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        format: InputFormat,
        /// Write the recursive profiles as CSV.
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
    /// Aggregated statistics for two or more series.
    NSample {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Test a single series for one change point.
    CpTest {
        file: PathBuf,
        #[command(flatten)]
        format: InputFormat,
        /// Write both scan curves as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Locate multiple change points by wild binary segmentation.
    Wbs {
        file: PathBuf,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Simulate a null distribution into the cache and print critical values.
    SimulateNull {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        /// Replace an existing cache file.
        #[arg(long)]
        force: bool,
    },
    /// Run a Monte Carlo design file.
    Experiment {
        file: PathBuf,
        /// Keep per-replication statistics in the report.
        #[arg(long)]
        runs: bool,
        /// Write a summary table as CSV.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Pairwise two-sample p-values between several series.
    PairwiseMatrix {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        format: InputFormat,
        /// Write the p-value matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .settings
        .resolve()
        .and_then(|cfg| commands::run(&cli.command, &cfg, cli.settings.output.as_deref()));
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

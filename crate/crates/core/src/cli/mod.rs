//! Command-line interface.
//!
//! Exit codes: 0 when every check passes, 1 on a bound or predicate failure,
//! 2 on usage or parse errors, 3 when a resource cap is hit.

mod commands;
mod manifest;
mod output;
mod spec;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use manifest::{hash_input, InputHash, RunManifest};
pub use spec::{parse_spec, read_spec, FunctionSpec, SpecFile, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_USAGE };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "boolcube", version, about = "Fourier analysis workbench for functions on the Boolean cube")]
pub struct Cli {
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent. CSV output also writes `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level weights and approximate degrees.
    Spectrum {
        #[arg(long)]
        spec: PathBuf,
        /// Accuracies for the l2 degree.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Class-membership predicates with witnesses.
    Check {
        #[arg(long)]
        spec: PathBuf,
        /// Classes to test; all of them when absent.
        #[arg(long = "class", value_enum, value_delimiter = ',')]
        classes: Vec<ClassName>,
        /// Constant of the self-bounding test.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs a bound battery over a seeded corpus.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest corpus dimension.
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Learns a spec from random examples and reports the exact error.
    Learn(LearnArgs),
    /// Runs a named sweep.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    Monotone,
    Submodular,
    Subadditive,
    SelfBounding,
    Xos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Core,
    Xos,
    Submodular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeName {
    Submodular,
    Xos,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = ModeName::Submodular)]
    pub mode: ModeName,
    #[arg(long)]
    pub seed: u64,
    /// Junta-size parameter.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Exact sample count, overriding the computed default.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = crate::learner::DEFAULT_MAX_SAMPLES)]
    pub max_samples: usize,
    #[arg(long, default_value_t = crate::learner::DEFAULT_SAMPLE_CONSTANT)]
    pub sample_constant: f64,
    #[arg(long, default_value_t = crate::learner::DEFAULT_FEATURE_CAP)]
    pub feature_cap: usize,
    /// Leave predictions unclamped.
    #[arg(long)]
    pub no_clip: bool,
    /// Where to write the learned model as JSON.
    #[arg(long)]
    pub model_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    HockeyTail,
    TalagrandNs,
    LipschitzSum,
    Census,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    /// Hockey-stick sizes, or the DNF dimension (first value) for talagrand-ns.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Tail level: `half` for floor(k/2), or a fixed integer.
    #[arg(long, default_value = "half")]
    pub d_rule: String,
    #[arg(long, default_value_t = 200)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Noise rate for talagrand-ns (first value) or thresholds for lipschitz-sum.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Corpus size for lipschitz-sum and census without a spec.
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Emit per-seed rows instead of the summary for talagrand-ns.
    #[arg(long)]
    pub rows: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match pool.install(|| commands::dispatch(&cli.command, &argv)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

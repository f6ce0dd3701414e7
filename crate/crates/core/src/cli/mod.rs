//! The `mmf` command line: generators, factorization, benchmarks, wavelet
//! export and wavelet-network training. Every command writes
//! `<command>.manifest.json` into `--out`; `mmf replay <manifest>` reruns it.

mod commands;
mod manifest;
mod pipeline;
mod tables;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::stiefel::StiefelConfig;

pub use manifest::RunManifest;
pub use pipeline::{run_method, FactorizeSettings, Method, MethodRun};
pub use tables::{parse_features_csv, parse_labels_csv, LabelSplit};

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "mmf", version, about = "Learnable multiresolution matrix factorization")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GlobalArgs {
    /// Master seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Write timing columns as 0 so reruns are byte-identical.
    #[arg(long, global = true)]
    pub mask_timing: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Write a test matrix in MatrixMarket format.
    Generate(GenerateArgs),
    /// Factorize a matrix with one method.
    Factorize(FactorizeArgs),
    /// Error and timing grid over methods and core sizes.
    Benchmark(BenchmarkArgs),
    /// Export the wavelet basis of a stored factorization.
    Wavelets(WaveletsArgs),
    /// Train a wavelet network for node classification.
    Wnn(WnnArgs),
    /// Rerun a command from its manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Factorize(_) => "factorize",
            Command::Benchmark(_) => "benchmark",
            Command::Wavelets(_) => "wavelets",
            Command::Wnn(_) => "wnn",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Normalized Laplacian of Zachary's karate club.
    Karate,
    /// Kronecker power of a 2×2 seed matrix.
    Kronecker,
    /// Normalized Laplacian of a Cayley tree.
    CayleyTree,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GeneratorKind,
    /// Kronecker order.
    #[arg(long, default_value_t = 9)]
    pub order: usize,
    /// Kronecker seed entries `s00,s01,s11`.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1.0, 1.0])]
    pub seed_matrix: Vec<f64>,
    /// Cayley tree coordination number.
    #[arg(long, default_value_t = 4)]
    pub z: usize,
    /// Cayley tree depth.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Output file name inside `--out`; defaults to `<kind>.mtx`.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EvoArgs {
    /// Population size `p_max` (even).
    #[arg(long, default_value_t = 40)]
    pub population: usize,
    /// Generations `i_max`.
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// EA mutation probability.
    #[arg(long, default_value_t = 0.3)]
    pub mutation_rate: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StiefelArgs {
    /// Stop at this Riemannian gradient norm.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    /// Sufficient-decrease constant.
    #[arg(long, default_value_t = 1e-4)]
    pub rho1: f64,
    /// Curvature constant.
    #[arg(long, default_value_t = 0.9)]
    pub rho2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau_init: f64,
}

impl StiefelArgs {
    pub fn config(&self) -> StiefelConfig {
        StiefelConfig {
            rho1: self.rho1,
            rho2: self.rho2,
            epsilon: self.epsilon,
            max_outer_iters: self.max_iters,
            tau_init: self.tau_init,
            ..StiefelConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FactorizeArgs {
    /// MatrixMarket input.
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Ea)]
    pub method: Method,
    /// Levels `L`.
    #[arg(short = 'L', long = "levels")]
    pub levels: usize,
    /// Rotation order.
    #[arg(short, long, default_value_t = 8)]
    pub k: usize,
    /// Wavelets per level.
    #[arg(short, long, default_value_t = 1)]
    pub c: usize,
    #[command(flatten)]
    pub evo: EvoArgs,
    #[command(flatten)]
    pub stiefel: StiefelArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMethod {
    LearnedEa,
    LearnedDe,
    Heuristic,
    Random,
    GreedyJacobi,
    Nystrom,
}

impl BenchMethod {
    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::LearnedEa => "learned-ea",
            BenchMethod::LearnedDe => "learned-de",
            BenchMethod::Heuristic => "heuristic",
            BenchMethod::Random => "random",
            BenchMethod::GreedyJacobi => "greedy-jacobi",
            BenchMethod::Nystrom => "nystrom",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BenchmarkArgs {
    /// MatrixMarket input.
    pub matrix: PathBuf,
    /// Final core sizes `d_L`; MMF methods use `L = (n − d_L) / c`.
    #[arg(long = "dl-grid", value_delimiter = ',', default_values_t = [4usize, 8, 12, 16])]
    pub dl_grid: Vec<usize>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_values_t = [BenchMethod::LearnedEa, BenchMethod::GreedyJacobi, BenchMethod::Nystrom]
    )]
    pub methods: Vec<BenchMethod>,
    /// Seeds per stochastic MMF method: `seed, seed + 1, …`.
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    /// Seeds per Nyström grid point.
    #[arg(long, default_value_t = 20)]
    pub nystrom_seeds: u64,
    #[arg(short, long, default_value_t = 8)]
    pub k: usize,
    #[arg(short, long, default_value_t = 1)]
    pub c: usize,
    #[command(flatten)]
    pub evo: EvoArgs,
    #[command(flatten)]
    pub stiefel: StiefelArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct WaveletsArgs {
    /// Factorization JSON.
    pub factorization: PathBuf,
    /// File prefix inside `--out`.
    #[arg(long, default_value = "basis")]
    pub prefix: String,
    /// Magnitude above which a basis entry counts as non-zero.
    #[arg(long, default_value_t = crate::wavelets::DEFAULT_SPARSITY_THRESHOLD)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct WnnArgs {
    /// MatrixMarket graph operator to factorize.
    pub matrix: PathBuf,
    /// CSV `vertex,class,split` with split `train` or `test`.
    #[arg(long)]
    pub labels: PathBuf,
    /// CSV with a header and rows `vertex,x_0,x_1,…`; constant features if absent.
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Factorization method for the basis.
    #[arg(long, value_enum, default_value_t = Method::GreedyJacobi)]
    pub method: Method,
    /// Levels `L`; defaults to `n − 1`.
    #[arg(short = 'L', long = "levels")]
    pub levels: Option<usize>,
    #[arg(short, long, default_value_t = 2)]
    pub k: usize,
    /// Hidden channel widths.
    #[arg(long, value_delimiter = ',')]
    pub hidden: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub lr: f64,
    #[arg(long, default_value_t = 200)]
    pub epochs: usize,
    #[command(flatten)]
    pub evo: EvoArgs,
    #[command(flatten)]
    pub stiefel: StiefelArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// A `<command>.manifest.json` written by an earlier run.
    pub manifest: PathBuf,
}

/// Installs the `MMF_LOG` filter (`error`, `info` or `debug`; default
/// `error`). Later calls are no-ops.
pub fn init_logging() {
    let level = std::env::var("MMF_LOG").unwrap_or_else(|_| "error".into());
    let filter = match level.to_ascii_lowercase().as_str() {
        "debug" => log::LevelFilter::Debug,
        "info" => log::LevelFilter::Info,
        "error" => log::LevelFilter::Error,
        other => {
            eprintln!("MMF_LOG={other} not recognised; using error");
            log::LevelFilter::Error
        }
    };
    let _ = env_logger::Builder::new()
        .filter_level(filter)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| MmfError::InvalidParameter(e.to_string()))?;
    run(cli)
}

pub fn run(cli: Cli) -> Result<()> {
    if cli.global.jobs == 0 {
        return Err(MmfError::InvalidParameter("--jobs must be at least 1".into()));
    }
    if let Command::Replay(r) = &cli.command {
        let manifest = RunManifest::read(&r.manifest)?;
        let mut replayed = manifest.invocation.clone();
        if replayed.global.out.as_os_str().is_empty() {
            replayed.global.out = cli.global.out.clone();
        }
        log::info!("replaying `{}` from {}", replayed.command.name(), r.manifest.display());
        return run(replayed);
    }
    std::fs::create_dir_all(&cli.global.out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| MmfError::InvalidParameter(format!("thread pool: {e}")))?;
    let start = std::time::Instant::now();
    let mut cli_for_manifest = cli.clone();
    pool.install(|| commands::dispatch(&cli))?;
    let duration = start.elapsed().as_secs_f64();
    cli_for_manifest.global.out = PathBuf::new();
    RunManifest::new(cli_for_manifest, duration).write(&cli.global.out)
}

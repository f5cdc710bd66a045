use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpm_core::engine::{Interval, PoolStrategy, SolverConfig, StopCondition};

#[derive(Debug, Parser)]
#[command(
    name = "mpm",
    version,
    about = "Multi-parent memetic search for the linear ordering problem"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Seeded multi-run campaign over a directory of instances.
    Bench(BenchArgs),
    /// Compare parent counts or pool-update strategies on one instance.
    Ablation(AblationArgs),
    /// Exhaustive optimum for instances with n <= 10.
    Exact(ExactArgs),
    /// Write a uniform random instance in LOLIB format.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoolStrategyArg {
    Score,
    Ovbs,
}

impl From<PoolStrategyArg> for PoolStrategy {
    fn from(value: PoolStrategyArg) -> Self {
        match value {
            PoolStrategyArg::Score => PoolStrategy::ScoreBased,
            PoolStrategyArg::Ovbs => PoolStrategy::Ovbs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AblationMode {
    /// m = 2, 3, 4
    Parents,
    /// random alpha, fixed alpha = 0.8, objective-only
    Pool,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Population size.
    #[arg(long = "p", default_value_t = 25)]
    pub population: usize,
    /// Offspring per generation.
    #[arg(long = "c", default_value_t = 10)]
    pub offspring: usize,
    /// Stagnant generations before a restart.
    #[arg(long = "g", default_value_t = 30)]
    pub stagnation: u32,
    /// Parents per recombination.
    #[arg(long = "m", default_value_t = 3)]
    pub parents: usize,
    #[arg(long, default_value_t = 0.6)]
    pub beta_low: f64,
    #[arg(long, default_value_t = 0.7)]
    pub beta_high: f64,
    #[arg(long, default_value_t = 0.8)]
    pub alpha_low: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha_high: f64,
    #[arg(long, value_enum, default_value = "score")]
    pub pool_strategy: PoolStrategyArg,
    #[arg(long)]
    pub max_generations: Option<u64>,
    /// Wall-clock limit per run, in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub retry_cap: usize,
    /// Breed offspring on all cores (results are unchanged).
    #[arg(long)]
    pub parallel: bool,
}

impl SolverArgs {
    /// Generation budget when neither `--max-generations` nor `--time-limit`
    /// is given.
    pub fn to_config(&self, default_generations: u64) -> Result<SolverConfig, String> {
        let time_limit = match self.time_limit {
            Some(t) if !(t.is_finite() && t > 0.0) => return Err(format!("invalid --time-limit {t}")),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        let max_generations = match (self.max_generations, time_limit) {
            (None, None) => Some(default_generations),
            (g, _) => g,
        };
        let cfg = SolverConfig {
            population_size: self.population,
            offspring_count: self.offspring,
            stagnation_limit: self.stagnation,
            parent_count: self.parents,
            beta: Interval::new(self.beta_low, self.beta_high),
            alpha: Interval::new(self.alpha_low, self.alpha_high),
            pool_strategy: self.pool_strategy.into(),
            seed: self.seed,
            stop: StopCondition {
                max_generations,
                time_limit,
            },
            selection_retry_cap: self.retry_cap,
            parallel: self.parallel,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the per-generation trace CSV here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub directory: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AblationArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub mode: AblationMode,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Directory for one trace CSV per (configuration, run).
    #[arg(long)]
    pub trace_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Dimension.
    pub n: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub low: i64,
    #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
    pub high: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance name line; defaults to one built from n and seed.
    #[arg(long)]
    pub name: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

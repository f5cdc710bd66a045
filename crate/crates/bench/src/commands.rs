use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mpm_core::engine::{Interval, PoolStrategy};
use mpm_core::instance::{instance_to_string, is_valid_name, parse_instance_str, GeneratorSpec, LopInstance};
use mpm_core::oracle::exact_solve;
use mpm_core::{generate_instance, run, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{AblationArgs, AblationMode, BenchArgs, Command, ExactArgs, GenArgs, OutputFormat, SolveArgs};
use crate::digest::{config_digest, derive_seed, instance_digest};
use crate::error::CliError;
use crate::report::{BenchReport, RunRow};

/// Default generation budget for `solve` and `bench`.
pub const DEFAULT_GENERATIONS: u64 = 1000;
/// Default generation budget for `ablation`.
pub const ABLATION_GENERATIONS: u64 = 400;

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Bench(args) => cmd_bench(args, out),
        Command::Ablation(args) => cmd_ablation(args, out),
        Command::Exact(args) => cmd_exact(args, out),
        Command::Gen(args) => cmd_gen(args, out),
    }
}

/// Name for an instance file without a name line.
fn label_for(path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem: String = stem.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
    if is_valid_name(&stem) {
        stem
    } else {
        format!("instance_{stem}")
    }
}

pub fn load_instance(path: &Path) -> Result<LopInstance, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::Parse {
        path: path.to_path_buf(),
        source: mpm_core::instance::InstanceError::Utf8,
    })?;
    parse_instance_str(&text, &label_for(path)).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write_out(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

#[derive(Debug, Serialize)]
struct SolveRecord {
    instance: String,
    n: usize,
    seed: u64,
    best_objective: i64,
    best_permutation: Vec<usize>,
    time_to_best_ms: f64,
    generation_of_best: u64,
    generations: u64,
    restarts: u64,
    selection_fallbacks: u64,
    config_digest: String,
    instance_digest: String,
}

impl SolveRecord {
    const FIELDS: [&'static str; 12] = [
        "instance",
        "n",
        "seed",
        "best_objective",
        "best_permutation",
        "time_to_best_ms",
        "generation_of_best",
        "generations",
        "restarts",
        "selection_fallbacks",
        "config_digest",
        "instance_digest",
    ];

    fn values(&self) -> [String; 12] {
        let perm: Vec<String> = self.best_permutation.iter().map(usize::to_string).collect();
        [
            self.instance.clone(),
            self.n.to_string(),
            self.seed.to_string(),
            self.best_objective.to_string(),
            perm.join(" "),
            format!("{:.3}", self.time_to_best_ms),
            self.generation_of_best.to_string(),
            self.generations.to_string(),
            self.restarts.to_string(),
            self.selection_fallbacks.to_string(),
            self.config_digest.clone(),
            self.instance_digest.clone(),
        ]
    }

    fn to_text(&self) -> String {
        Self::FIELDS
            .iter()
            .zip(self.values())
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect()
    }

    fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(Self::FIELDS)?;
        writer.write_record(self.values())?;
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.solver.to_config(DEFAULT_GENERATIONS).map_err(CliError::Config)?;
    let inst = load_instance(&args.instance)?;
    let outcome = run(&inst, &cfg).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(path) = &args.trace {
        fs::write(path, outcome.trace.to_csv()).map_err(|e| CliError::io(path, e))?;
    }
    let record = SolveRecord {
        instance: inst.name().to_string(),
        n: inst.n(),
        seed: cfg.seed,
        best_objective: outcome.best.best.objective,
        best_permutation: outcome.best.best.perm.to_one_based(),
        time_to_best_ms: outcome.best.time_to_best.as_secs_f64() * 1e3,
        generation_of_best: outcome.best.generation_of_best,
        generations: outcome.generations,
        restarts: outcome.restarts,
        selection_fallbacks: outcome.selection_fallbacks,
        config_digest: config_digest(&cfg),
        instance_digest: instance_digest(&inst),
    };
    let text = match args.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&record).map_err(|e| CliError::Report(e.to_string()))? + "\n"
        }
        OutputFormat::Csv => record.to_csv().map_err(|e| CliError::Report(e.to_string()))?,
        OutputFormat::Text => record.to_text(),
    };
    write_out(out, None, &text)
}

struct Cell<'a> {
    group: String,
    inst: &'a LopInstance,
    cfg: SolverConfig,
    run: usize,
}

fn run_cells(cells: Vec<Cell<'_>>, jobs: usize) -> Result<Vec<(RunRow, mpm_core::engine::RunTrace)>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let results = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let outcome = run(cell.inst, &cell.cfg).expect("config validated before scheduling");
                let row = RunRow {
                    group: cell.group.clone(),
                    instance: cell.inst.name().to_string(),
                    n: cell.inst.n(),
                    run: cell.run,
                    seed: cell.cfg.seed,
                    best_objective: outcome.best.best.objective,
                    time_to_best_ms: outcome.best.time_to_best.as_secs_f64() * 1e3,
                    generations: outcome.generations,
                    restarts: outcome.restarts,
                    selection_fallbacks: outcome.selection_fallbacks,
                    config_digest: config_digest(&cell.cfg),
                    instance_digest: instance_digest(cell.inst),
                };
                (row, outcome.trace)
            })
            .collect()
    });
    Ok(results)
}

fn render_report(report: &BenchReport, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Csv => report.to_csv().map_err(|e| CliError::Report(e.to_string())),
        OutputFormat::Json => report.to_json().map_err(|e| CliError::Report(e.to_string())),
        OutputFormat::Text => Ok(report.to_table()),
    }
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| CliError::io(dir, e))? {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        let path = entry.path();
        let hidden = path.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let base = args.solver.to_config(DEFAULT_GENERATIONS).map_err(CliError::Config)?;
    if args.runs == 0 {
        return Err(CliError::Config("--runs must be at least 1".into()));
    }
    let mut instances = Vec::new();
    let mut failures = 0;
    for path in instance_files(&args.directory)? {
        match load_instance(&path) {
            Ok(inst) => instances.push(inst),
            Err(err) => {
                eprintln!("skipping {err}");
                failures += 1;
            }
        }
    }
    instances.sort_by(|a, b| a.name().cmp(b.name()));

    let mut cells = Vec::new();
    for inst in &instances {
        for run in 0..args.runs {
            let cfg = SolverConfig {
                seed: derive_seed(base.seed, inst.name(), run),
                ..base.clone()
            };
            cells.push(Cell {
                group: inst.name().to_string(),
                inst,
                cfg,
                run,
            });
        }
    }
    let rows = run_cells(cells, args.jobs)?.into_iter().map(|(row, _)| row).collect();
    let report = BenchReport::from_rows(rows);
    write_out(out, args.output.as_deref(), &render_report(&report, args.format)?)?;
    if failures > 0 {
        return Err(CliError::PartialParse(failures));
    }
    Ok(())
}

/// Labelled configurations compared by an ablation.
pub fn ablation_configs(mode: AblationMode, base: &SolverConfig) -> Vec<(String, SolverConfig)> {
    match mode {
        AblationMode::Parents => [2, 3, 4]
            .into_iter()
            .map(|m| {
                (
                    format!("m={m}"),
                    SolverConfig {
                        parent_count: m,
                        ..base.clone()
                    },
                )
            })
            .collect(),
        AblationMode::Pool => vec![
            (
                format!("alpha=rand({},{})", base.alpha.low, base.alpha.high),
                SolverConfig {
                    pool_strategy: PoolStrategy::ScoreBased,
                    ..base.clone()
                },
            ),
            (
                format!("alpha={}", base.alpha.low),
                SolverConfig {
                    pool_strategy: PoolStrategy::ScoreBased,
                    alpha: Interval::fixed(base.alpha.low),
                    ..base.clone()
                },
            ),
            (
                "ovbs".to_string(),
                SolverConfig {
                    pool_strategy: PoolStrategy::Ovbs,
                    ..base.clone()
                },
            ),
        ],
    }
}

fn file_safe(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn cmd_ablation(args: &AblationArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let base = args.solver.to_config(ABLATION_GENERATIONS).map_err(CliError::Config)?;
    if args.runs == 0 {
        return Err(CliError::Config("--runs must be at least 1".into()));
    }
    let configs = ablation_configs(args.mode, &base);
    for (label, cfg) in &configs {
        cfg.validate().map_err(|e| CliError::Config(format!("{label}: {e}")))?;
    }
    let inst = load_instance(&args.instance)?;

    let mut cells = Vec::new();
    for (label, cfg) in &configs {
        for run in 0..args.runs {
            let seed = derive_seed(base.seed, inst.name(), run);
            cells.push(Cell {
                group: label.clone(),
                inst: &inst,
                cfg: SolverConfig { seed, ..cfg.clone() },
                run,
            });
        }
    }
    let results = run_cells(cells, args.jobs)?;
    if let Some(dir) = &args.trace_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (row, trace) in &results {
            let path = dir.join(format!("{}_run{}.csv", file_safe(&row.group), row.run));
            fs::write(&path, trace.to_csv()).map_err(|e| CliError::io(&path, e))?;
        }
    }
    let report = BenchReport::from_rows(results.into_iter().map(|(row, _)| row).collect());
    write_out(out, args.output.as_deref(), &render_report(&report, args.format)?)
}

pub fn cmd_exact(args: &ExactArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let (optimum, witness) = exact_solve(&inst)?;
    let text = format!(
        "instance: {}\nn: {}\noptimum: {}\nwitness: {}\n",
        inst.name(),
        inst.n(),
        optimum,
        witness
    );
    write_out(out, None, &text)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = GeneratorSpec {
        n: args.n,
        weight_low: args.low,
        weight_high: args.high,
        seed: args.seed,
    };
    let mut inst = generate_instance(&spec).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(name) = &args.name {
        inst = LopInstance::new(name.clone(), inst.n(), inst.weights().to_vec())
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    write_out(out, args.output.as_deref(), &instance_to_string(&inst))
}

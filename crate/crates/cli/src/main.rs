//! `plsbm`: generate partially labeled SBM instances, cluster them by
//! total-variation minimization, run accuracy sweeps and check the recovery
//! conditions.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use plsbm_core::analysis::{self, AnalysisConfig, SpectralNormalizer};
use plsbm_core::clusterer;
use plsbm_core::error::{AnalysisError, ClusterError, FormatError, SbmError, SolverError};
use plsbm_core::experiment::{self, SweepConfig, SweepError};
use plsbm_core::io::{self, Instance};
use plsbm_core::sbm::{SbmInstance, SbmParams};
use plsbm_core::solver::SolverConfig;

/// Environment variable that sets the number of sweep worker threads.
const THREADS_ENV: &str = "PLSBM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "plsbm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an SBM instance and write it to a directory.
    Generate(GenerateArgs),
    /// Cluster an instance and write the per-node result CSV.
    Cluster(ClusterArgs),
    /// Run the Monte Carlo accuracy sweep.
    Sweep(SweepArgs),
    /// Write the per-cluster recovery-condition report.
    Analyze(AnalyzeArgs),
}

/// Model parameters, shared by `generate` and inline `cluster`.
#[derive(Debug, Args)]
struct ModelArgs {
    /// Total number of nodes, split evenly over `--clusters`.
    #[arg(long)]
    nodes: Option<usize>,
    /// Number of clusters used with `--nodes`.
    #[arg(long)]
    clusters: Option<usize>,
    /// Comma-separated cluster sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Within-cluster edge probability.
    #[arg(long = "p-in")]
    p_in: Option<f64>,
    /// Cross-cluster edge probability.
    #[arg(long = "p-out")]
    p_out: Option<f64>,
    /// Labeled nodes per cluster.
    #[arg(long = "num-seeds")]
    num_seeds: Option<usize>,
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    /// Stop once the running average moves less than this in sup norm.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// key=value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Instance directory; without it the instance is sampled from the model flags.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Result CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Comma-separated within-cluster probabilities.
    #[arg(long = "p-in", value_delimiter = ',')]
    p_in: Option<Vec<f64>>,
    #[arg(long = "p-out")]
    p_out: Option<f64>,
    /// Comma-separated labeled-node counts per cluster.
    #[arg(long = "num-seeds", value_delimiter = ',')]
    num_seeds: Option<Vec<usize>>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Per-run CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Aggregate CSV path (mean accuracy per S and ratio).
    #[arg(long = "aggregate-out")]
    aggregate_out: Option<PathBuf>,
    /// Also write a gnuplot script for the aggregate CSV.
    #[arg(long, requires = "aggregate_out")]
    gnuplot: Option<PathBuf>,
    /// Write 0 in the wall_ms column so output is reproducible byte for byte.
    #[arg(long = "no-timing")]
    no_timing: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Normalizer {
    /// Divide boundary edges by the total node count.
    Total,
    /// Divide boundary edges by the cluster size.
    Cluster,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Normalizer of the spectral cut condition.
    #[arg(long, value_enum, default_value_t = Normalizer::Total)]
    normalizer: Normalizer,
    /// Report CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Invalid or missing command-line input.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage<T>(message: impl Into<String>) -> Result<T> {
    Err(UsageError(message.into()).into())
}

/// Values from a `--config` file. Keys may use `-` or `_`.
#[derive(Debug, Default)]
struct ConfigFile(BTreeMap<String, String>);

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let map = io::parse_key_values(&text, path)?
            .into_iter()
            .map(|(k, v)| (k.replace('_', "-"), v))
            .collect();
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| match v.parse() {
                Ok(v) => Ok(v),
                Err(_) => usage(format!("config: malformed value for `{key}`: {v}")),
            })
            .transpose()
    }

    fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.0
            .get(key)
            .map(|v| match io::parse_list(v) {
                Some(v) => Ok(v),
                None => usage(format!("config: malformed list for `{key}`: {v}")),
            })
            .transpose()
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    fn pick_list<T: FromStr>(&self, flag: Option<Vec<T>>, key: &str) -> Result<Option<Vec<T>>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get_list(key),
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    match value {
        Some(v) => Ok(v),
        None => usage(format!("missing --{flag}")),
    }
}

fn resolve_sizes(
    sizes: Option<Vec<usize>>,
    nodes: Option<usize>,
    clusters: Option<usize>,
) -> Result<Vec<usize>> {
    match (sizes, nodes) {
        (Some(_), Some(_)) => usage("give either --sizes or --nodes, not both"),
        (Some(sizes), None) => Ok(sizes),
        (None, Some(n)) => {
            let k = clusters.unwrap_or(2);
            if k == 0 || n % k != 0 {
                return usage(format!(
                    "--nodes {n} does not split evenly into {k} clusters"
                ));
            }
            Ok(vec![n / k; k])
        }
        (None, None) => usage("missing --sizes or --nodes"),
    }
}

struct Model {
    params: SbmParams,
    num_seeds: usize,
    rng_seed: u64,
}

fn resolve_model(args: ModelArgs, cfg: &ConfigFile) -> Result<Model> {
    let sizes = resolve_sizes(
        cfg.pick_list(args.sizes, "sizes")?,
        cfg.pick(args.nodes, "nodes")?,
        cfg.pick(args.clusters, "clusters")?,
    )?;
    let p_in = require(cfg.pick(args.p_in, "p-in")?, "p-in")?;
    let p_out = require(cfg.pick(args.p_out, "p-out")?, "p-out")?;
    Ok(Model {
        params: SbmParams::new(sizes, p_in, p_out)?,
        num_seeds: cfg.pick(args.num_seeds, "num-seeds")?.unwrap_or(1),
        rng_seed: cfg.pick(args.rng_seed, "rng-seed")?.unwrap_or(0),
    })
}

fn resolve_solver(args: SolverArgs, cfg: &ConfigFile) -> Result<SolverConfig> {
    let default = SolverConfig::default();
    let config = SolverConfig {
        max_iters: cfg
            .pick(args.max_iters, "max-iters")?
            .unwrap_or(default.max_iters),
        tol: cfg.pick(args.tol, "tol")?.unwrap_or(default.tol),
        record_history: false,
    };
    config.validate()?;
    Ok(config)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| {
        FormatError::Io {
            path: path.to_path_buf(),
            source,
        }
        .into()
    })
}

fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let model = resolve_model(args.model, &cfg)?;
    let instance = SbmInstance::sample(&model.params, model.num_seeds, model.rng_seed)?;
    io::write_instance(&args.out, &Instance::from(instance))?;
    Ok(())
}

fn cmd_cluster(args: ClusterArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let instance = match args.instance.or(cfg.get("instance")?) {
        Some(dir) => io::read_instance(&dir)?,
        None => {
            let model = resolve_model(args.model, &cfg)?;
            SbmInstance::sample(&model.params, model.num_seeds, model.rng_seed)?.into()
        }
    };
    let solver = resolve_solver(args.solver, &cfg)?;
    let result = clusterer::cluster_seed_set(&instance.graph, &instance.seeds, &solver)?;
    let acc = clusterer::accuracy(&result, &instance.truth, &instance.seeds);
    emit(
        args.out.as_deref(),
        &io::clustering_csv(&result, &instance.truth, &instance.seeds),
    )?;
    let max_iters = result
        .diagnostics
        .iter()
        .map(|d| d.iters)
        .max()
        .unwrap_or(0);
    let converged = result.diagnostics.iter().all(|d| d.converged);
    let summary = format!(
        "accuracy={} correct={} evaluated={} clusters={} max_iters={max_iters} converged={converged}",
        acc.value,
        acc.correct,
        acc.evaluated,
        result.num_clusters(),
    );
    // Keep standard output clean when it carries the CSV.
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            )),
        },
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let default = SweepConfig::default();
    let p_out = cfg.pick(args.p_out, "p-out")?.unwrap_or(default.p_out);
    let p_in_grid = match cfg.pick_list(args.p_in, "p-in")? {
        Some(grid) => grid,
        // The default grid is tied to the default p_out.
        None => (1..=20).map(|k| f64::from(k) * p_out).collect(),
    };
    let config = SweepConfig {
        cluster_sizes: cfg
            .pick_list(args.sizes, "sizes")?
            .unwrap_or(default.cluster_sizes),
        p_out,
        p_in_grid,
        s_values: cfg
            .pick_list(args.num_seeds, "num-seeds")?
            .unwrap_or(default.s_values),
        reps: cfg.pick(args.reps, "reps")?.unwrap_or(default.reps),
        rng_seed: cfg
            .pick(args.rng_seed, "rng-seed")?
            .unwrap_or(default.rng_seed),
        solver: resolve_solver(args.solver, &cfg)?,
    };
    let timing = !(args.no_timing || cfg.get::<bool>("no-timing")?.unwrap_or(false));
    let rows = experiment::run_sweep(&config, threads_from_env()?, timing)?;
    write_file(&args.out, &experiment::sweep_csv(&rows))?;
    let aggregate = experiment::aggregate(&rows);
    if let Some(path) = &args.aggregate_out {
        write_file(path, &experiment::aggregate_csv(&aggregate))?;
        if let Some(script) = &args.gnuplot {
            let png = script.with_extension("png");
            write_file(
                script,
                &experiment::gnuplot_script(
                    &path.display().to_string(),
                    &config.s_values,
                    &png.display().to_string(),
                ),
            )?;
        }
    }
    println!(
        "runs={} points={} mean_accuracy={}",
        rows.len(),
        aggregate.len(),
        rows.iter().map(|r| r.accuracy).sum::<f64>() / rows.len() as f64
    );
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let instance = io::read_instance(&args.instance)?;
    let params = match &instance.params {
        Some(p) => p.clone(),
        None => analysis::estimate_params(&instance.graph, &instance.truth),
    };
    let config = AnalysisConfig {
        alpha: cfg
            .pick(args.alpha, "alpha")?
            .unwrap_or(analysis::DEFAULT_ALPHA),
        beta: cfg
            .pick(args.beta, "beta")?
            .unwrap_or(analysis::DEFAULT_BETA),
        normalizer: match args.normalizer {
            Normalizer::Total => SpectralNormalizer::TotalNodes,
            Normalizer::Cluster => SpectralNormalizer::ClusterSize,
        },
    };
    let report = analysis::analyze(
        &instance.graph,
        &instance.truth,
        &instance.seeds,
        &params,
        &config,
    )?;
    emit(args.out.as_deref(), &io::analysis_csv(&report))
}

/// Short name of the error's class for the `error[...]` prefix.
fn error_class(err: &anyhow::Error) -> &'static str {
    if err.is::<UsageError>() {
        "usage"
    } else if err.is::<FormatError>() {
        "format"
    } else if err.is::<SbmError>() {
        "model"
    } else if err.is::<SolverError>() {
        "solver"
    } else if err.is::<ClusterError>() {
        "cluster"
    } else if err.is::<SweepError>() {
        "sweep"
    } else if err.is::<AnalysisError>() {
        "analysis"
    } else {
        "internal"
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Sweep(args) => cmd_sweep(args).context("sweep failed"),
        Command::Analyze(args) => cmd_analyze(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let class = error_class(&err);
            eprintln!("error[{class}]: {err:#}");
            ExitCode::from(if class == "usage" { 2 } else { 1 })
        }
    }
}

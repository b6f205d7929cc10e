//! Monte Carlo accuracy sweeps over the SBM parameter grid.
//!
//! Every run draws its instance from a seed derived from the master seed and
//! the run's `(grid, s, rep)` indices, so results do not depend on the number
//! of worker threads or on which other grid points are present.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::clusterer;
use crate::error::{ClusterError, SbmError};
use crate::sbm::{derive_seed, SbmInstance, SbmParams};
use crate::solver::SolverConfig;

pub const SWEEP_COLUMNS: &[&str] = &[
    "s",
    "p_in",
    "p_out",
    "ratio",
    "rep",
    "instance_seed",
    "accuracy",
    "iters",
    "wall_ms",
];

pub const AGGREGATE_COLUMNS: &[&str] = &["s", "ratio", "mean_accuracy", "std_accuracy", "reps"];

/// Default master seed for sweeps.
pub const DEFAULT_SWEEP_SEED: u64 = 20_180_501;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("failed to build worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Sbm(#[from] SbmError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub cluster_sizes: Vec<usize>,
    pub p_out: f64,
    pub p_in_grid: Vec<f64>,
    pub s_values: Vec<usize>,
    pub reps: usize,
    pub rng_seed: u64,
    pub solver: SolverConfig,
}

impl Default for SweepConfig {
    /// Two clusters of 50 nodes, p_out = 0.025, p_in = k·p_out for
    /// k = 1..=20, S ∈ {5, 10, 15} and 10 repetitions: the ratio
    /// S·p_in/p_out spans 5..=300.
    fn default() -> Self {
        let p_out = 0.025;
        Self {
            cluster_sizes: vec![50, 50],
            p_out,
            p_in_grid: (1..=20).map(|k| f64::from(k) * p_out).collect(),
            s_values: vec![5, 10, 15],
            reps: 10,
            rng_seed: DEFAULT_SWEEP_SEED,
            solver: SolverConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        let invalid = |msg: String| Err(SweepError::InvalidConfig(msg));
        if self.p_in_grid.is_empty() {
            return invalid("p_in grid is empty".into());
        }
        if self.s_values.is_empty() {
            return invalid("seed-count list is empty".into());
        }
        if self.reps == 0 {
            return invalid("reps must be at least 1".into());
        }
        if self.p_out.is_nan() || self.p_out <= 0.0 {
            return invalid(format!(
                "p_out = {} must be positive for the ratio axis",
                self.p_out
            ));
        }
        for &p_in in &self.p_in_grid {
            SbmParams::new(self.cluster_sizes.clone(), p_in, self.p_out)?;
        }
        let smallest = self.cluster_sizes.iter().copied().min().unwrap_or(0);
        for &s in &self.s_values {
            if s == 0 {
                return invalid("seed counts must be at least 1".into());
            }
            if s > smallest {
                return Err(SbmError::TooManySeeds {
                    requested: s,
                    smallest,
                }
                .into());
            }
        }
        self.solver
            .validate()
            .map_err(|e| SweepError::InvalidConfig(e.to_string()))
    }

    pub fn num_runs(&self) -> usize {
        self.p_in_grid.len() * self.s_values.len() * self.reps
    }

    /// Seed of the instance at grid index `grid`, seed-count index `s_index`
    /// and repetition `rep`.
    pub fn instance_seed(&self, grid: usize, s_index: usize, rep: usize) -> u64 {
        derive_seed(self.rng_seed, &[grid as u64, s_index as u64, rep as u64])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub s: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub ratio: f64,
    pub rep: usize,
    pub instance_seed: u64,
    pub accuracy: f64,
    /// Largest iteration count over the K per-cluster solves.
    pub iters: usize,
    pub wall_ms: u64,
}

/// `s · p_in / p_out`.
pub fn ratio(s: usize, p_in: f64, p_out: f64) -> f64 {
    s as f64 * p_in / p_out
}

/// Samples one instance and clusters it.
pub fn run_one(
    config: &SweepConfig,
    grid: usize,
    s_index: usize,
    rep: usize,
    timing: bool,
) -> Result<SweepRow, SweepError> {
    let start = Instant::now();
    let p_in = config.p_in_grid[grid];
    let s = config.s_values[s_index];
    let params = SbmParams::new(config.cluster_sizes.clone(), p_in, config.p_out)?;
    let instance_seed = config.instance_seed(grid, s_index, rep);
    let instance = SbmInstance::sample(&params, s, instance_seed)?;
    let result = clusterer::cluster_seed_set(&instance.graph, &instance.seeds, &config.solver)?;
    let accuracy = clusterer::accuracy(&result, &instance.truth, &instance.seeds).value;
    let iters = result
        .diagnostics
        .iter()
        .map(|d| d.iters)
        .max()
        .unwrap_or(0);
    let wall_ms = if timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(SweepRow {
        s,
        p_in,
        p_out: config.p_out,
        ratio: ratio(s, p_in, config.p_out),
        rep,
        instance_seed,
        accuracy,
        iters,
        wall_ms,
    })
}

/// Runs every `(grid, s, rep)` combination, in parallel on `threads` workers
/// (rayon's default when `None`). Rows come back in `(grid, s, rep)` order.
/// With `timing` off, `wall_ms` is 0 so that output is reproducible byte for
/// byte.
pub fn run_sweep(
    config: &SweepConfig,
    threads: Option<usize>,
    timing: bool,
) -> Result<Vec<SweepRow>, SweepError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder.build()?;
    let (n_s, reps) = (config.s_values.len(), config.reps);
    pool.install(|| {
        (0..config.num_runs())
            .into_par_iter()
            .map(|idx| {
                let (grid, rest) = (idx / (n_s * reps), idx % (n_s * reps));
                run_one(config, grid, rest / reps, rest % reps, timing)
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub s: usize,
    pub ratio: f64,
    pub mean_accuracy: f64,
    /// Sample standard deviation; 0 for a single repetition.
    pub std_accuracy: f64,
    pub reps: usize,
}

/// Mean and sample standard deviation of accuracy per `(s, p_in)` point, in
/// order of first appearance.
pub fn aggregate(rows: &[SweepRow]) -> Vec<AggregateRow> {
    let mut groups: Vec<((usize, u64), Vec<f64>, f64)> = Vec::new();
    for row in rows {
        let key = (row.s, row.p_in.to_bits());
        match groups.iter_mut().find(|(k, _, _)| *k == key) {
            Some((_, values, _)) => values.push(row.accuracy),
            None => groups.push((key, vec![row.accuracy], row.ratio)),
        }
    }
    groups
        .into_iter()
        .map(|((s, _), values, ratio)| {
            let n = values.len();
            let mean = values.iter().sum::<f64>() / n as f64;
            let std = if n > 1 {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            AggregateRow {
                s,
                ratio,
                mean_accuracy: mean,
                std_accuracy: std,
                reps: n,
            }
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = SWEEP_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.s, r.p_in, r.p_out, r.ratio, r.rep, r.instance_seed, r.accuracy, r.iters, r.wall_ms
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = AGGREGATE_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.s, r.ratio, r.mean_accuracy, r.std_accuracy, r.reps
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// A gnuplot script that plots mean accuracy against `S·p_in/p_out`, one
/// curve per S, from an aggregate CSV at `aggregate_path`.
pub fn gnuplot_script(aggregate_path: &str, s_values: &[usize], output_png: &str) -> String {
    let mut out = String::new();
    out.push_str("set datafile separator ','\n");
    out.push_str("set terminal pngcairo size 800,600\n");
    writeln!(out, "set output '{output_png}'").unwrap();
    out.push_str("set xlabel 'S p_in/p_out'\nset ylabel 'accuracy'\n");
    out.push_str("set yrange [0.4:1.02]\nset key bottom right\n");
    let curves: Vec<String> = s_values
        .iter()
        .map(|s| {
            format!(
                "'{aggregate_path}' using ($1=={s} ? $2 : 1/0):3:4 skip 1 with yerrorlines title 'S={s}'"
            )
        })
        .collect();
    writeln!(out, "plot {}", curves.join(", \\\n     ")).unwrap();
    out
}

/// Least-squares non-decreasing fit (pool-adjacent-violators).
pub fn isotonic_fit(values: &[f64]) -> Vec<f64> {
    // Blocks of (mean, count).
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (m2, c2) = blocks[blocks.len() - 1];
            let (m1, c1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let c = c1 + c2;
            *blocks.last_mut().unwrap() = ((m1 * c1 as f64 + m2 * c2 as f64) / c as f64, c);
        }
    }
    blocks
        .into_iter()
        .flat_map(|(m, c)| std::iter::repeat_n(m, c))
        .collect()
}

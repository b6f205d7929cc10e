//! Primal-dual message passing for TV minimization with clamped seed values.
//!
//! Solves `min_x sum_{ij in E} |x_j - x_i|` subject to `x_i = v_i` on the seed
//! nodes. Each sweep:
//!
//! 1. extrapolates `x~ = 2 x^(r) - x^(r-1)`;
//! 2. updates every edge dual `y_e += (x~_head - x~_tail) / 2` and clips it to
//!    `[-1, 1]`;
//! 3. takes a primal step `x_i -= (sum_{out} y_e - sum_{in} y_e) / d_i`;
//! 4. clamps seed nodes back to their values;
//! 5. folds the new primal iterate into the running average, which is the
//!    returned estimate.
//!
//! The dual phase finishes before the primal phase starts. Both phases read
//! only the previous phase, so they are evaluated in parallel on large graphs
//! without affecting the result.

use rayon::prelude::*;

use crate::error::SolverError;
use crate::graph::{Graph, GraphSignal};

/// Edge count above which sweeps are evaluated with rayon.
const PARALLEL_EDGE_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Stop once the sup-norm change of the running average over one sweep
    /// drops below this value.
    pub tol: f64,
    /// Keep every primal iterate.
    pub record_history: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol: 1e-6,
            record_history: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.max_iters == 0 {
            return Err(SolverError::ZeroIterations);
        }
        Ok(())
    }
}

/// Clamped node values, `(node, value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedValues(Vec<(usize, f64)>);

impl SeedValues {
    pub fn new(values: Vec<(usize, f64)>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[(usize, f64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn validate(&self, graph: &Graph) -> Result<(), SolverError> {
        if self.0.is_empty() {
            return Err(SolverError::EmptySeedSet);
        }
        for &(node, value) in &self.0 {
            if node >= graph.num_nodes() {
                return Err(crate::error::GraphError::NodeOutOfRange {
                    node,
                    num_nodes: graph.num_nodes(),
                }
                .into());
            }
            if !value.is_finite() {
                return Err(SolverError::NonFiniteSeed { node });
            }
        }
        Ok(())
    }
}

impl FromIterator<(usize, f64)> for SeedValues {
    fn from_iter<T: IntoIterator<Item = (usize, f64)>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub x_prev: GraphSignal,
    pub x_cur: GraphSignal,
    /// One dual variable per edge, in edge-id order.
    pub y: Vec<f64>,
    pub x_bar: GraphSignal,
    pub r: usize,
    pub gamma: Vec<f64>,
}

impl SolverState {
    /// Zero primal, dual and average; `gamma_i = 1/d_i`, or 1 for isolated nodes.
    pub fn init(graph: &Graph, seeds: &SeedValues) -> Result<Self, SolverError> {
        seeds.validate(graph)?;
        let n = graph.num_nodes();
        let gamma = (0..n)
            .map(|i| match graph.degree(i) {
                0 => 1.0,
                d => 1.0 / d as f64,
            })
            .collect();
        Ok(Self {
            x_prev: GraphSignal::zeros(n),
            x_cur: GraphSignal::zeros(n),
            y: vec![0.0; graph.num_edges()],
            x_bar: GraphSignal::zeros(n),
            r: 0,
            gamma,
        })
    }

    /// One full sweep. Returns the sup-norm change of the running average.
    pub fn iterate(&mut self, graph: &Graph, seeds: &SeedValues) -> f64 {
        let parallel = graph.num_edges() >= PARALLEL_EDGE_THRESHOLD;
        let x_cur = self.x_cur.as_slice();
        let x_prev = self.x_prev.as_slice();
        let extrapolated = |i: usize| 2.0 * x_cur[i] - x_prev[i];

        let dual_step = |(e, y): (usize, &mut f64)| {
            let edge = graph.edge(e);
            let v = *y + 0.5 * (extrapolated(edge.head) - extrapolated(edge.tail));
            *y = v / v.abs().max(1.0);
        };
        if parallel {
            self.y.par_iter_mut().enumerate().for_each(dual_step);
        } else {
            self.y.iter_mut().enumerate().for_each(dual_step);
        }

        let y = &self.y;
        let gamma = &self.gamma;
        let primal_step = |i: usize| {
            let divergence: f64 = graph
                .incident_edges(i)
                .iter()
                .map(|&e| if graph.edge(e).head == i { y[e] } else { -y[e] })
                .sum();
            x_cur[i] - gamma[i] * divergence
        };
        let mut x_next: Vec<f64> = if parallel {
            (0..graph.num_nodes())
                .into_par_iter()
                .map(primal_step)
                .collect()
        } else {
            (0..graph.num_nodes()).map(primal_step).collect()
        };
        for &(node, value) in seeds.as_slice() {
            x_next[node] = value;
        }

        self.r += 1;
        let weight = 1.0 / self.r as f64;
        let mut change = 0.0f64;
        for (avg, &x) in self.x_bar.as_mut_slice().iter_mut().zip(&x_next) {
            // Same as (1 - 1/r) avg + (1/r) x, but leaves avg untouched when x == avg.
            let delta = (x - *avg) * weight;
            *avg += delta;
            change = change.max(delta.abs());
        }
        self.x_prev = std::mem::replace(&mut self.x_cur, GraphSignal::from(x_next));
        change
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub iters: usize,
    pub tv_final: f64,
    pub converged: bool,
    /// Largest deviation of the returned estimate from the seed values.
    pub residual_sup: f64,
}

impl Diagnostics {
    pub fn to_key_values(&self) -> String {
        format!(
            "iters={}\ntv_final={}\nconverged={}\nresidual_sup={}\n",
            self.iters, self.tv_final, self.converged, self.residual_sup
        )
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// The running average of the primal iterates.
    pub x_bar: GraphSignal,
    pub diagnostics: Diagnostics,
    /// Primal iterates `x^(1), ..., x^(r)` when history recording is on.
    pub history: Option<Vec<GraphSignal>>,
    pub state: SolverState,
}

pub fn solve(
    graph: &Graph,
    seeds: &SeedValues,
    config: &SolverConfig,
) -> Result<Solution, SolverError> {
    config.validate()?;
    let mut state = SolverState::init(graph, seeds)?;
    let mut history = config.record_history.then(Vec::new);
    let mut converged = false;
    while state.r < config.max_iters {
        let change = state.iterate(graph, seeds);
        if let Some(h) = history.as_mut() {
            h.push(state.x_cur.clone());
        }
        if change < config.tol {
            converged = true;
            break;
        }
    }
    let tv_final = graph.tv(&state.x_bar)?;
    let residual_sup = seeds
        .as_slice()
        .iter()
        .map(|&(i, v)| (state.x_bar[i] - v).abs())
        .fold(0.0, f64::max);
    Ok(Solution {
        x_bar: state.x_bar.clone(),
        diagnostics: Diagnostics {
            iters: state.r,
            tv_final,
            converged,
            residual_sup,
        },
        history,
        state,
    })
}

/// The TV objective.
pub fn objective(graph: &Graph, x: &[f64]) -> Result<f64, SolverError> {
    Ok(graph.tv(x)?)
}

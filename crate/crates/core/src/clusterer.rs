//! One-vs-rest clustering: one TV-minimization solve per cluster, decoded by
//! argmax over the averaged indicator estimates.

use rayon::prelude::*;

use crate::error::ClusterError;
use crate::graph::{Graph, GraphSignal, Partition};
use crate::sbm::SeedSet;
use crate::solver::{self, Diagnostics, SeedValues, SolverConfig};

/// Seed values for the indicator problem of `cluster`: 1 on seeds labeled
/// `cluster`, 0 on all other seeds. The flag is false when no seed carries
/// label `cluster`, in which case every target is 0.
pub fn indicator_targets(labels: &[(usize, usize)], cluster: usize) -> (SeedValues, bool) {
    let values: SeedValues = labels
        .iter()
        .map(|&(node, label)| (node, if label == cluster { 1.0 } else { 0.0 }))
        .collect();
    let has_positive = labels.iter().any(|&(_, label)| label == cluster);
    (values, has_positive)
}

#[derive(Debug, Clone)]
pub struct ClusteringResult {
    /// Estimated cluster per node (0-based).
    pub assignment: Vec<usize>,
    /// Averaged indicator estimate per cluster, each of length N.
    pub scores: Vec<GraphSignal>,
    pub diagnostics: Vec<Diagnostics>,
}

impl ClusteringResult {
    pub fn num_clusters(&self) -> usize {
        self.scores.len()
    }

    /// Total iterations over all K solves.
    pub fn total_iters(&self) -> usize {
        self.diagnostics.iter().map(|d| d.iters).sum()
    }
}

/// Runs one solve per cluster and assigns each node to the cluster with the
/// largest score. Ties go to the smallest cluster index. The number of
/// clusters is one more than the largest label.
pub fn cluster(
    graph: &Graph,
    labels: &[(usize, usize)],
    config: &SolverConfig,
) -> Result<ClusteringResult, ClusterError> {
    let num_clusters = labels
        .iter()
        .map(|&(_, k)| k + 1)
        .max()
        .ok_or(ClusterError::NoSeeds)?;
    cluster_k(graph, labels, num_clusters, config)
}

/// As [`cluster`] with an explicit cluster count; every cluster in
/// `0..num_clusters` needs at least one seed.
pub fn cluster_k(
    graph: &Graph,
    labels: &[(usize, usize)],
    num_clusters: usize,
    config: &SolverConfig,
) -> Result<ClusteringResult, ClusterError> {
    if labels.is_empty() {
        return Err(ClusterError::NoSeeds);
    }
    let mut seen = vec![false; graph.num_nodes()];
    for &(node, _) in labels {
        if node >= graph.num_nodes() {
            return Err(crate::error::GraphError::NodeOutOfRange {
                node,
                num_nodes: graph.num_nodes(),
            }
            .into());
        }
        if std::mem::replace(&mut seen[node], true) {
            return Err(ClusterError::DuplicateSeed { node });
        }
    }
    if let Some(cluster) = (0..num_clusters).find(|&k| !labels.iter().any(|&(_, label)| label == k))
    {
        return Err(ClusterError::ClusterWithoutSeed { cluster });
    }

    let solutions = (0..num_clusters)
        .into_par_iter()
        .map(|k| {
            let (targets, _) = indicator_targets(labels, k);
            solver::solve(graph, &targets, config)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (scores, diagnostics): (Vec<_>, Vec<_>) = solutions
        .into_iter()
        .map(|s| (s.x_bar, s.diagnostics))
        .unzip();

    let assignment: Vec<usize> = (0..graph.num_nodes())
        .map(|i| argmax(scores.iter().map(|s| s[i])))
        .collect();
    for &(node, label) in labels {
        assert_eq!(
            assignment[node], label,
            "seed {node} decoded to a cluster other than its label"
        );
    }
    Ok(ClusteringResult {
        assignment,
        scores,
        diagnostics,
    })
}

/// Convenience wrapper for a [`SeedSet`] whose grouping gives the labels.
pub fn cluster_seed_set(
    graph: &Graph,
    seeds: &SeedSet,
    config: &SolverConfig,
) -> Result<ClusteringResult, ClusterError> {
    cluster_k(graph, &seeds.labeled(), seeds.per_cluster().len(), config)
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (k, v) in values.enumerate() {
        if v > best_value {
            best = k;
            best_value = v;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub value: f64,
    pub correct: usize,
    pub evaluated: usize,
    /// Every node is labeled, so there is nothing to evaluate; value is 1.
    pub degenerate: bool,
}

/// Fraction of unlabeled nodes whose estimate matches the truth.
pub fn accuracy(result: &ClusteringResult, truth: &Partition, seeds: &SeedSet) -> Accuracy {
    accuracy_with(result, truth, seeds, false)
}

/// As [`accuracy`], optionally counting the labeled nodes too.
pub fn accuracy_with(
    result: &ClusteringResult,
    truth: &Partition,
    seeds: &SeedSet,
    include_seeds: bool,
) -> Accuracy {
    let labeled = seeds.membership_mask(truth.num_nodes());
    let (correct, evaluated) = (0..truth.num_nodes())
        .filter(|&i| include_seeds || !labeled[i])
        .fold((0, 0), |(c, n), i| {
            (
                c + usize::from(result.assignment[i] == truth.cluster_of(i)),
                n + 1,
            )
        });
    if evaluated == 0 {
        return Accuracy {
            value: 1.0,
            correct,
            evaluated,
            degenerate: true,
        };
    }
    Accuracy {
        value: correct as f64 / evaluated as f64,
        correct,
        evaluated,
        degenerate: false,
    }
}

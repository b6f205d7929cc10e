//! Partially labeled stochastic block model instances.
//!
//! Randomness comes from ChaCha8 with one stream per node row, so the Bernoulli
//! draw for a pair `(i, j)`, `i < j`, depends only on the seed, `i` and `j`'s
//! position in row `i`. Rows can be generated in any order.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GraphError, SbmError};
use crate::graph::{Graph, Partition};

/// Stream tag used when deriving the seed-selection seed from an instance seed.
const SEED_SELECTION_TAG: u64 = 0x005e_ed5e_1ec7;

#[derive(Debug, Clone, PartialEq)]
pub struct SbmParams {
    pub cluster_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
}

impl SbmParams {
    pub fn new(cluster_sizes: Vec<usize>, p_in: f64, p_out: f64) -> Result<Self, SbmError> {
        let params = Self {
            cluster_sizes,
            p_in,
            p_out,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), SbmError> {
        if self.cluster_sizes.is_empty() {
            return Err(SbmError::NoClusters);
        }
        if self.cluster_sizes.contains(&0) {
            return Err(SbmError::EmptyCluster);
        }
        for (name, value) in [("p_in", self.p_in), ("p_out", self.p_out)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(SbmError::InvalidProbability { name, value });
            }
        }
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.cluster_sizes.iter().sum()
    }

    pub fn num_clusters(&self) -> usize {
        self.cluster_sizes.len()
    }
}

/// Labeled nodes, grouped by their true cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    per_cluster: Vec<Vec<usize>>,
}

impl SeedSet {
    /// Validates the grouping against `truth`: distinct seeds, each listed under
    /// its true cluster.
    pub fn new(per_cluster: Vec<Vec<usize>>, truth: &Partition) -> Result<Self, GraphError> {
        if per_cluster.len() != truth.num_clusters() {
            return Err(GraphError::InvalidCluster {
                cluster: per_cluster.len(),
                num_clusters: truth.num_clusters(),
            });
        }
        let mut seen = vec![false; truth.num_nodes()];
        for (k, nodes) in per_cluster.iter().enumerate() {
            for &i in nodes {
                if i >= truth.num_nodes() {
                    return Err(GraphError::NodeOutOfRange {
                        node: i,
                        num_nodes: truth.num_nodes(),
                    });
                }
                if seen[i] || truth.cluster_of(i) != k {
                    return Err(GraphError::InvalidCluster {
                        cluster: k,
                        num_clusters: truth.num_clusters(),
                    });
                }
                seen[i] = true;
            }
        }
        Ok(Self { per_cluster })
    }

    /// Groups a flat list of labeled nodes by their true cluster.
    pub fn from_nodes(nodes: &[usize], truth: &Partition) -> Result<Self, GraphError> {
        let mut per_cluster = vec![Vec::new(); truth.num_clusters()];
        for &i in nodes {
            if i >= truth.num_nodes() {
                return Err(GraphError::NodeOutOfRange {
                    node: i,
                    num_nodes: truth.num_nodes(),
                });
            }
            per_cluster[truth.cluster_of(i)].push(i);
        }
        Self::new(per_cluster, truth)
    }

    pub fn per_cluster(&self) -> &[Vec<usize>] {
        &self.per_cluster
    }

    pub fn cluster(&self, k: usize) -> &[usize] {
        &self.per_cluster[k]
    }

    /// `(node, cluster)` pairs, ordered by cluster then draw order.
    pub fn labeled(&self) -> Vec<(usize, usize)> {
        self.per_cluster
            .iter()
            .enumerate()
            .flat_map(|(k, nodes)| nodes.iter().map(move |&i| (i, k)))
            .collect()
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.per_cluster.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.per_cluster.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, node: usize) -> bool {
        self.per_cluster.iter().any(|c| c.contains(&node))
    }

    pub fn membership_mask(&self, num_nodes: usize) -> Vec<bool> {
        let mut mask = vec![false; num_nodes];
        for i in self.per_cluster.iter().flatten() {
            mask[*i] = true;
        }
        mask
    }
}

#[derive(Debug, Clone)]
pub struct SbmInstance {
    pub params: SbmParams,
    pub graph: Graph,
    pub truth: Partition,
    pub seeds: SeedSet,
    pub rng_seed: u64,
}

impl SbmInstance {
    /// Draws a graph with [`generate`] and `seeds_per_cluster` labeled nodes per
    /// cluster with [`select_seeds`], all reproducible from `rng_seed`.
    pub fn sample(
        params: &SbmParams,
        seeds_per_cluster: usize,
        rng_seed: u64,
    ) -> Result<Self, SbmError> {
        let (graph, truth) = generate(params, rng_seed)?;
        let seeds = select_seeds(
            &truth,
            seeds_per_cluster,
            derive_seed(rng_seed, &[SEED_SELECTION_TAG]),
        )?;
        Ok(Self {
            params: params.clone(),
            graph,
            truth,
            seeds,
            rng_seed,
        })
    }

    pub fn seeds_per_cluster(&self) -> usize {
        self.seeds.per_cluster().first().map_or(0, Vec::len)
    }
}

/// Samples an SBM graph. Clusters occupy contiguous id blocks in order.
pub fn generate(params: &SbmParams, rng_seed: u64) -> Result<(Graph, Partition), SbmError> {
    params.validate()?;
    let truth = Partition::contiguous(&params.cluster_sizes).expect("sizes validated");
    let n = params.num_nodes();
    let mut edges = Vec::new();
    for i in 0..n {
        let mut rng = row_rng(rng_seed, i);
        for j in i + 1..n {
            let p = if truth.cluster_of(i) == truth.cluster_of(j) {
                params.p_in
            } else {
                params.p_out
            };
            // One draw per pair regardless of p keeps the stream layout fixed.
            let u: f64 = rng.random();
            if u < p {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("generated pairs are canonical and distinct");
    Ok((graph, truth))
}

fn row_rng(rng_seed: u64, row: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(row as u64);
    rng
}

/// Draws `s` distinct nodes uniformly from every cluster.
pub fn select_seeds(truth: &Partition, s: usize, rng_seed: u64) -> Result<SeedSet, SbmError> {
    let smallest = truth.sizes().iter().copied().min().unwrap_or(0);
    if s > smallest {
        return Err(SbmError::TooManySeeds {
            requested: s,
            smallest,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let per_cluster = (0..truth.num_clusters())
        .map(|k| {
            let members = truth.members(k);
            let mut picked: Vec<usize> = index::sample(&mut rng, members.len(), s)
                .into_iter()
                .map(|pos| members[pos])
                .collect();
            picked.sort_unstable();
            picked
        })
        .collect();
    Ok(SeedSet::new(per_cluster, truth).expect("seeds drawn from their own cluster"))
}

/// Relabels nodes by a uniformly random permutation.
pub fn permute_nodes(graph: &Graph, truth: &Partition, rng_seed: u64) -> (Graph, Partition) {
    let n = graph.num_nodes();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let perm: Vec<usize> = index::sample(&mut rng, n, n).into_vec();
    let edges: Vec<_> = graph
        .edges()
        .iter()
        .map(|e| (perm[e.head], perm[e.tail]))
        .collect();
    let mut assignment = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        assignment[new] = truth.cluster_of(old);
    }
    (
        Graph::new(n, &edges).expect("permutation preserves validity"),
        Partition::new(assignment, truth.num_clusters()).expect("same cluster sizes"),
    )
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `base` and an index path, e.g. `(grid, s, rep)`.
/// Each path component is folded in with a SplitMix64 round.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(base), |acc, &step| {
        splitmix64(acc ^ splitmix64(step))
    })
}

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} out of range for a graph with {num_nodes} nodes")]
    NodeOutOfRange { node: usize, num_nodes: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge {{{a}, {b}}}")]
    DuplicateEdge { a: usize, b: usize },
    #[error("signal has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {{{a}, {b}}} is not in the graph")]
    UnknownEdge { a: usize, b: usize },
    #[error("cluster index {cluster} out of range (K = {num_clusters})")]
    InvalidCluster { cluster: usize, num_clusters: usize },
    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },
    #[error("dense matrix requested for {nodes} nodes, cap is {cap}")]
    DenseTooLarge { nodes: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SbmError {
    #[error("at least one cluster is required")]
    NoClusters,
    #[error("cluster sizes must be positive")]
    EmptyCluster,
    #[error("probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error(
        "{requested} seeds per cluster requested but the smallest cluster has {smallest} nodes"
    )]
    TooManySeeds { requested: usize, smallest: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("seed set is empty")]
    EmptySeedSet,
    #[error("seed value for node {node} is not finite")]
    NonFiniteSeed { node: usize },
    #[error("max_iters must be at least 1")]
    ZeroIterations,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClusterError {
    #[error("cluster {cluster} has no labeled seed")]
    ClusterWithoutSeed { cluster: usize },
    #[error("no labeled seeds given")]
    NoSeeds,
    #[error("seed node {node} is labeled twice")]
    DuplicateSeed { node: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("cluster has {size} nodes, exhaustive subset enumeration is capped at {cap}")]
    ClusterTooLarge { size: usize, cap: usize },
    #[error("cluster boundary has {size} nodes, sign-pattern enumeration is capped at {cap}")]
    BoundaryTooLarge { size: usize, cap: usize },
    #[error("labeled node {node} is not in cluster {cluster}")]
    SeedOutsideCluster { node: usize, cluster: usize },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("seed value for node {node} is not binary")]
    NonBinarySeed { node: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: missing header key `{key}`")]
    MissingKey { path: PathBuf, key: &'static str },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

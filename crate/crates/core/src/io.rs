//! Plain-text instance files and CSV outputs.
//!
//! An instance directory holds three files:
//!
//! * `edges.txt`: one edge per line, two whitespace-separated 0-based node ids;
//! * `partition.txt`: one `node_id cluster_index` line per node, clusters 1-based;
//! * `header.txt`: `key=value` lines (`n`, `sizes`, `p_in`, `p_out`,
//!   `rng_seed`, `S`, `seeds`), lists comma-separated.
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::analysis::AnalysisReport;
use crate::clusterer::ClusteringResult;
use crate::error::FormatError;
use crate::graph::{Graph, Partition};
use crate::sbm::{SbmInstance, SbmParams, SeedSet};

pub const EDGES_FILE: &str = "edges.txt";
pub const PARTITION_FILE: &str = "partition.txt";
pub const HEADER_FILE: &str = "header.txt";

/// A graph with ground truth and labeled nodes, loaded from disk or sampled.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub truth: Partition,
    pub seeds: SeedSet,
    pub params: Option<SbmParams>,
    pub rng_seed: Option<u64>,
}

impl From<SbmInstance> for Instance {
    fn from(inst: SbmInstance) -> Self {
        Self {
            graph: inst.graph,
            truth: inst.truth,
            seeds: inst.seeds,
            params: Some(inst.params),
            rng_seed: Some(inst.rng_seed),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), FormatError> {
    fs::write(path, contents).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_ids<const N: usize>(
    path: &Path,
    line: usize,
    text: &str,
) -> Result<[usize; N], FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return Err(parse_error(
            path,
            line,
            format!("expected {N} fields, found {}", fields.len()),
        ));
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| parse_error(path, line, format!("`{field}` is not a node id")))?;
    }
    Ok(out)
}

/// Parses an edge list. Without `num_nodes` the graph spans `0..=max id`.
pub fn parse_edge_list(
    text: &str,
    num_nodes: Option<usize>,
    path: &Path,
) -> Result<Graph, FormatError> {
    let edges = content_lines(text)
        .map(|(line, l)| parse_ids::<2>(path, line, l).map(|[a, b]| (a, b)))
        .collect::<Result<Vec<_>, _>>()?;
    let n =
        num_nodes.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    Ok(Graph::new(n, &edges)?)
}

pub fn format_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for e in graph.edges() {
        writeln!(out, "{} {}", e.head, e.tail).unwrap();
    }
    out
}

/// Parses `node cluster` lines (clusters 1-based). Every node `0..n` must
/// appear exactly once.
pub fn parse_partition(text: &str, path: &Path) -> Result<Partition, FormatError> {
    let mut entries = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let [node, cluster] = parse_ids::<2>(path, line, l)?;
        if cluster == 0 {
            return Err(parse_error(path, line, "cluster indices start at 1"));
        }
        if entries.insert(node, cluster - 1).is_some() {
            return Err(parse_error(path, line, format!("node {node} listed twice")));
        }
    }
    let n = entries.len();
    if entries.keys().enumerate().any(|(i, &node)| i != node) {
        return Err(FormatError::Invalid {
            path: path.to_path_buf(),
            message: format!("node ids must cover 0..{n}"),
        });
    }
    let assignment: Vec<usize> = entries.into_values().collect();
    let k = assignment.iter().max().map_or(0, |m| m + 1);
    Ok(Partition::new(assignment, k)?)
}

pub fn format_partition(partition: &Partition) -> String {
    let mut out = String::new();
    for (i, &c) in partition.assignment().iter().enumerate() {
        writeln!(out, "{i} {}", c + 1).unwrap();
    }
    out
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_header(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "n={}", instance.graph.num_nodes()).unwrap();
    writeln!(out, "sizes={}", join(instance.truth.sizes())).unwrap();
    if let Some(p) = &instance.params {
        writeln!(out, "p_in={}", p.p_in).unwrap();
        writeln!(out, "p_out={}", p.p_out).unwrap();
    }
    if let Some(seed) = instance.rng_seed {
        writeln!(out, "rng_seed={seed}").unwrap();
    }
    let s = instance
        .seeds
        .per_cluster()
        .iter()
        .map(Vec::len)
        .min()
        .unwrap_or(0);
    writeln!(out, "S={s}").unwrap();
    writeln!(out, "seeds={}", join(&instance.seeds.nodes())).unwrap();
    out
}

/// Parses `key=value` lines into a map. Repeated keys keep the last value.
pub fn parse_key_values(text: &str, path: &Path) -> Result<BTreeMap<String, String>, FormatError> {
    content_lines(text)
        .map(|(line, l)| {
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| parse_error(path, line, "expected key=value"))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn parse_list<T: std::str::FromStr>(value: &str) -> Option<Vec<T>> {
    if value.is_empty() {
        return Some(Vec::new());
    }
    value.split(',').map(|v| v.trim().parse().ok()).collect()
}

struct Header {
    n: usize,
    sizes: Option<Vec<usize>>,
    p_in: Option<f64>,
    p_out: Option<f64>,
    rng_seed: Option<u64>,
    seeds: Vec<usize>,
}

fn parse_header(text: &str, path: &Path) -> Result<Header, FormatError> {
    let map = parse_key_values(text, path)?;
    let invalid = |key: &str| FormatError::Invalid {
        path: path.to_path_buf(),
        message: format!("malformed value for `{key}`"),
    };
    let get = |key: &'static str| map.get(key).map(String::as_str);
    let n = get("n")
        .ok_or(FormatError::MissingKey {
            path: path.to_path_buf(),
            key: "n",
        })?
        .parse()
        .map_err(|_| invalid("n"))?;
    let seeds = get("seeds")
        .ok_or(FormatError::MissingKey {
            path: path.to_path_buf(),
            key: "seeds",
        })
        .and_then(|v| parse_list(v).ok_or_else(|| invalid("seeds")))?;
    let sizes = get("sizes")
        .map(|v| parse_list(v).ok_or_else(|| invalid("sizes")))
        .transpose()?;
    let p_in = get("p_in")
        .map(|v| v.parse().map_err(|_| invalid("p_in")))
        .transpose()?;
    let p_out = get("p_out")
        .map(|v| v.parse().map_err(|_| invalid("p_out")))
        .transpose()?;
    let rng_seed = get("rng_seed")
        .map(|v| v.parse().map_err(|_| invalid("rng_seed")))
        .transpose()?;
    Ok(Header {
        n,
        sizes,
        p_in,
        p_out,
        rng_seed,
        seeds,
    })
}

pub fn write_instance(dir: &Path, instance: &Instance) -> Result<(), FormatError> {
    fs::create_dir_all(dir).map_err(|source| FormatError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write(&dir.join(EDGES_FILE), &format_edge_list(&instance.graph))?;
    write(
        &dir.join(PARTITION_FILE),
        &format_partition(&instance.truth),
    )?;
    write(&dir.join(HEADER_FILE), &format_header(instance))
}

pub fn read_instance(dir: &Path) -> Result<Instance, FormatError> {
    let header_path = dir.join(HEADER_FILE);
    let header = parse_header(&read(&header_path)?, &header_path)?;
    let edges_path = dir.join(EDGES_FILE);
    let graph = parse_edge_list(&read(&edges_path)?, Some(header.n), &edges_path)?;
    let partition_path: PathBuf = dir.join(PARTITION_FILE);
    let truth = parse_partition(&read(&partition_path)?, &partition_path)?;
    let mismatch = |message: String| FormatError::Invalid {
        path: header_path.clone(),
        message,
    };
    if truth.num_nodes() != header.n {
        return Err(mismatch(format!(
            "partition covers {} nodes, header says n={}",
            truth.num_nodes(),
            header.n
        )));
    }
    if let Some(sizes) = &header.sizes {
        if sizes.as_slice() != truth.sizes() {
            return Err(mismatch("sizes disagree with the partition file".into()));
        }
    }
    let seeds = SeedSet::from_nodes(&header.seeds, &truth)?;
    let params = match (header.p_in, header.p_out) {
        (Some(p_in), Some(p_out)) => Some(
            SbmParams::new(truth.sizes().to_vec(), p_in, p_out)
                .map_err(|e| mismatch(e.to_string()))?,
        ),
        _ => None,
    };
    Ok(Instance {
        graph,
        truth,
        seeds,
        params,
        rng_seed: header.rng_seed,
    })
}

/// `node,true_cluster,pred_cluster,score_1..score_K,is_seed`, clusters 1-based.
pub fn clustering_csv(result: &ClusteringResult, truth: &Partition, seeds: &SeedSet) -> String {
    let k = result.num_clusters();
    let mut out = String::from("node,true_cluster,pred_cluster");
    for c in 1..=k {
        write!(out, ",score_{c}").unwrap();
    }
    out.push_str(",is_seed\n");
    let labeled = seeds.membership_mask(truth.num_nodes());
    for i in 0..truth.num_nodes() {
        write!(
            out,
            "{i},{},{}",
            truth.cluster_of(i) + 1,
            result.assignment[i] + 1
        )
        .unwrap();
        for scores in &result.scores {
            write!(out, ",{}", scores[i]).unwrap();
        }
        writeln!(out, ",{}", u8::from(labeled[i])).unwrap();
    }
    out
}

pub const ANALYSIS_COLUMNS: &[&str] = &[
    "row",
    "cluster",
    "size",
    "boundary_node_count",
    "boundary_edge_count",
    "lambda2",
    "connected",
    "eq19_lhs",
    "eq19_rhs",
    "eq19_holds",
    "prop2_holds",
    "uniform_cut_holds",
    "wellconnected_holds",
    "wellconnected_seeds",
    "theorem1_condition_lhs",
    "theorem1_condition_rhs",
    "theorem1_condition_holds",
    "boundary_bound",
    "spectral_bound_raw",
    "spectral_bound_clipped",
    "failure_bound_raw",
    "failure_bound_clipped",
    "alpha",
    "beta",
    "normalizer",
];

/// One row per cluster (1-based) and a final `global` row. Fields that do not
/// apply to a row are left empty.
pub fn analysis_csv(report: &AnalysisReport) -> String {
    let mut out = ANALYSIS_COLUMNS.join(",");
    out.push('\n');
    let t = &report.theorem1;
    let normalizer = match report.normalizer {
        crate::analysis::SpectralNormalizer::TotalNodes => "total_nodes",
        crate::analysis::SpectralNormalizer::ClusterSize => "cluster_size",
    };
    for c in &report.clusters {
        let seeds = c
            .wellconnected_seeds
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            out,
            "cluster,{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},,,{},{},{}",
            c.cluster + 1,
            c.size,
            c.boundary_node_count,
            c.boundary_edge_count,
            c.lambda2,
            c.connected,
            c.eq19_lhs,
            c.eq19_rhs,
            c.eq19_holds,
            c.prop2_holds,
            c.uniform_cut_holds,
            c.wellconnected_holds,
            seeds,
            c.theorem1.lhs,
            c.theorem1.rhs,
            c.theorem1.holds,
            c.theorem1
                .boundary_bound
                .map_or(String::new(), |b| b.to_string()),
            c.theorem1.spectral_bound.raw,
            c.theorem1.spectral_bound.clipped,
            t.alpha,
            t.beta,
            normalizer,
        )
        .unwrap();
    }
    let empty = ",".repeat(19);
    writeln!(
        out,
        "global{empty},{},{},{},{},{}",
        t.failure_bound.raw, t.failure_bound.clipped, t.alpha, t.beta, normalizer
    )
    .unwrap();
    out
}

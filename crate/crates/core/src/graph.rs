//! Undirected empirical graphs with a canonical edge orientation.
//!
//! Every undirected edge `{i, j}` is stored once as the oriented pair
//! `(head, tail)` with `head = min(i, j)` and `tail = max(i, j)`. The incidence
//! matrix puts `+1` at the head column and `-1` at the tail column of each row.
//! Node ids are 0-based.

use std::ops::Deref;

use nalgebra::DMatrix;

use crate::error::GraphError;

/// Default cap on the node count for which dense matrices are materialized.
pub const DENSE_NODE_CAP: usize = 2000;

/// An oriented edge: `head < tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub head: usize,
    pub tail: usize,
}

impl Edge {
    /// The endpoint opposite to `node`. `node` must be an endpoint.
    pub fn other(&self, node: usize) -> usize {
        if node == self.head {
            self.tail
        } else {
            self.head
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_nodes: usize,
    edges: Vec<Edge>,
    // Sorted neighbor lists, with the id of the connecting edge alongside.
    adjacency: Vec<Vec<usize>>,
    adjacent_edges: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from unordered node pairs.
    ///
    /// Pairs are canonicalized to `(min, max)`. Out-of-range ids, self-loops and
    /// duplicates (in either orientation) are rejected. Edge ids follow the order
    /// of `edge_list`.
    pub fn new(num_nodes: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_nodes];
        let mut edges = Vec::with_capacity(edge_list.len());
        for (id, &(a, b)) in edge_list.iter().enumerate() {
            for node in [a, b] {
                if node >= num_nodes {
                    return Err(GraphError::NodeOutOfRange { node, num_nodes });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { node: a });
            }
            let edge = Edge {
                head: a.min(b),
                tail: a.max(b),
            };
            edges.push(edge);
            adjacency[edge.head].push((edge.tail, id));
            adjacency[edge.tail].push((edge.head, id));
        }
        let mut neighbors = Vec::with_capacity(num_nodes);
        let mut adjacent_edges = Vec::with_capacity(num_nodes);
        for (node, mut list) in adjacency.into_iter().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(GraphError::DuplicateEdge {
                    a: node.min(w[0].0),
                    b: node.max(w[0].0),
                });
            }
            neighbors.push(list.iter().map(|&(j, _)| j).collect());
            adjacent_edges.push(list.iter().map(|&(_, e)| e).collect());
        }
        Ok(Self {
            num_nodes,
            edges,
            adjacency: neighbors,
            adjacent_edges,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Sorted neighbors N(i).
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Edge ids incident to `node`, aligned with [`Graph::neighbors`].
    pub fn incident_edges(&self, node: usize) -> &[usize] {
        &self.adjacent_edges[node]
    }

    /// Neighbors with a larger id: the tails of edges headed at `node`.
    pub fn out_neighbors(&self, node: usize) -> &[usize] {
        let nbrs = &self.adjacency[node];
        &nbrs[nbrs.partition_point(|&j| j < node)..]
    }

    /// Neighbors with a smaller id: the heads of edges whose tail is `node`.
    pub fn in_neighbors(&self, node: usize) -> &[usize] {
        let nbrs = &self.adjacency[node];
        &nbrs[..nbrs.partition_point(|&j| j < node)]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_id(a, b).is_some()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let nbrs = self.adjacency.get(a)?;
        nbrs.binary_search(&b)
            .ok()
            .map(|pos| self.adjacent_edges[a][pos])
    }

    /// Connected component label per node, labels assigned in order of the
    /// smallest node id of each component.
    pub fn components(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let mut label = vec![UNSEEN; self.num_nodes];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.num_nodes {
            if label[start] != UNSEEN {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if label[v] == UNSEEN {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.num_nodes == 0 || self.components().iter().all(|&c| c == 0)
    }

    /// Subgraph induced by `nodes` (in the given order), together with the map
    /// from new ids back to original ids.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut local = vec![usize::MAX; self.num_nodes];
        for (new_id, &node) in nodes.iter().enumerate() {
            if node >= self.num_nodes {
                return Err(GraphError::NodeOutOfRange {
                    node,
                    num_nodes: self.num_nodes,
                });
            }
            local[node] = new_id;
        }
        let edge_list: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| local[e.head] != usize::MAX && local[e.tail] != usize::MAX)
            .map(|e| (local[e.head], local[e.tail]))
            .collect();
        Ok((Graph::new(nodes.len(), &edge_list)?, nodes.to_vec()))
    }

    fn check_dense(&self, cap: usize) -> Result<(), GraphError> {
        if self.num_nodes > cap {
            return Err(GraphError::DenseTooLarge {
                nodes: self.num_nodes,
                cap,
            });
        }
        Ok(())
    }

    /// The E×N signed incidence matrix.
    pub fn incidence_matrix(&self) -> Result<DMatrix<f64>, GraphError> {
        self.incidence_matrix_capped(DENSE_NODE_CAP)
    }

    pub fn incidence_matrix_capped(&self, cap: usize) -> Result<DMatrix<f64>, GraphError> {
        self.check_dense(cap)?;
        let mut d = DMatrix::zeros(self.edges.len(), self.num_nodes);
        for (row, e) in self.edges.iter().enumerate() {
            d[(row, e.head)] = 1.0;
            d[(row, e.tail)] = -1.0;
        }
        Ok(d)
    }

    /// The N×N graph Laplacian `diag(d) - A`.
    pub fn laplacian(&self) -> Result<DMatrix<f64>, GraphError> {
        self.laplacian_capped(DENSE_NODE_CAP)
    }

    pub fn laplacian_capped(&self, cap: usize) -> Result<DMatrix<f64>, GraphError> {
        self.check_dense(cap)?;
        let n = self.num_nodes;
        let mut l = DMatrix::zeros(n, n);
        for i in 0..n {
            l[(i, i)] = self.degree(i) as f64;
        }
        for e in &self.edges {
            l[(e.head, e.tail)] = -1.0;
            l[(e.tail, e.head)] = -1.0;
        }
        Ok(l)
    }

    /// `x^T L x`, computed edge by edge.
    pub fn laplacian_quadratic(&self, x: &[f64]) -> Result<f64, GraphError> {
        self.check_len(x.len())?;
        Ok(self
            .edges
            .iter()
            .map(|e| (x[e.head] - x[e.tail]).powi(2))
            .sum())
    }

    /// `L x`, computed edge by edge.
    pub fn laplacian_apply(&self, x: &[f64]) -> Result<Vec<f64>, GraphError> {
        self.check_len(x.len())?;
        let mut out: Vec<f64> = (0..self.num_nodes)
            .map(|i| self.degree(i) as f64 * x[i])
            .collect();
        for e in &self.edges {
            out[e.head] -= x[e.tail];
            out[e.tail] -= x[e.head];
        }
        Ok(out)
    }

    /// `D x`: per-edge differences `x[head] - x[tail]`.
    pub fn difference(&self, x: &[f64]) -> Result<Vec<f64>, GraphError> {
        self.check_len(x.len())?;
        Ok(self.edges.iter().map(|e| x[e.head] - x[e.tail]).collect())
    }

    /// Total variation: the sum of `|x_j - x_i|` over all edges.
    pub fn tv(&self, x: &[f64]) -> Result<f64, GraphError> {
        self.check_len(x.len())?;
        Ok(self
            .edges
            .iter()
            .map(|e| (x[e.tail] - x[e.head]).abs())
            .sum())
    }

    /// Total variation restricted to the edges in `subset` (unordered pairs).
    pub fn tv_on_subset(&self, x: &[f64], subset: &[(usize, usize)]) -> Result<f64, GraphError> {
        self.check_len(x.len())?;
        subset.iter().try_fold(0.0, |acc, &(a, b)| {
            let id = self.edge_id(a, b).ok_or(GraphError::UnknownEdge { a, b })?;
            let e = self.edges[id];
            Ok(acc + (x[e.tail] - x[e.head]).abs())
        })
    }

    fn check_len(&self, len: usize) -> Result<(), GraphError> {
        if len != self.num_nodes {
            return Err(GraphError::LengthMismatch {
                expected: self.num_nodes,
                found: len,
            });
        }
        Ok(())
    }
}

/// A real-valued signal on the nodes of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSignal(Vec<f64>);

impl GraphSignal {
    pub fn zeros(num_nodes: usize) -> Self {
        Self(vec![0.0; num_nodes])
    }

    /// Checks the length against `graph`.
    pub fn for_graph(graph: &Graph, values: Vec<f64>) -> Result<Self, GraphError> {
        graph.check_len(values.len())?;
        Ok(Self(values))
    }

    /// Indicator of `nodes`.
    pub fn indicator(num_nodes: usize, nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut values = vec![0.0; num_nodes];
        for i in nodes {
            values[i] = 1.0;
        }
        Self(values)
    }

    /// Thresholds at 1/2; exactly 1/2 rounds down.
    pub fn rounded(&self) -> GraphSignal {
        Self(
            self.0
                .iter()
                .map(|&v| if v > 0.5 { 1.0 } else { 0.0 })
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for GraphSignal {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl Deref for GraphSignal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Assignment of every node to one of K nonempty clusters.
///
/// Cluster indices are 0-based here; file formats and reports use 1-based
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    pub fn new(assignment: Vec<usize>, num_clusters: usize) -> Result<Self, GraphError> {
        let mut sizes = vec![0; num_clusters];
        for &c in &assignment {
            if c >= num_clusters {
                return Err(GraphError::InvalidCluster {
                    cluster: c,
                    num_clusters,
                });
            }
            sizes[c] += 1;
        }
        if let Some(cluster) = sizes.iter().position(|&n| n == 0) {
            return Err(GraphError::EmptyCluster { cluster });
        }
        Ok(Self { assignment, sizes })
    }

    /// Contiguous blocks: the first `sizes[0]` ids form cluster 0, and so on.
    pub fn contiguous(sizes: &[usize]) -> Result<Self, GraphError> {
        let assignment = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &n)| std::iter::repeat_n(k, n))
            .collect();
        Self::new(assignment, sizes.len())
    }

    pub fn num_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_clusters(&self) -> usize {
        self.sizes.len()
    }

    pub fn cluster_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == cluster)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn check_cluster(&self, cluster: usize) -> Result<(), GraphError> {
        if cluster >= self.sizes.len() {
            return Err(GraphError::InvalidCluster {
                cluster,
                num_clusters: self.sizes.len(),
            });
        }
        Ok(())
    }

    fn check_graph(&self, graph: &Graph) -> Result<(), GraphError> {
        graph.check_len(self.assignment.len())
    }
}

/// Nodes of `cluster` with at least one neighbor outside it, in increasing order.
pub fn cluster_boundary(
    graph: &Graph,
    partition: &Partition,
    cluster: usize,
) -> Result<Vec<usize>, GraphError> {
    partition.check_graph(graph)?;
    partition.check_cluster(cluster)?;
    Ok((0..graph.num_nodes())
        .filter(|&i| partition.cluster_of(i) == cluster)
        .filter(|&i| {
            graph
                .neighbors(i)
                .iter()
                .any(|&j| partition.cluster_of(j) != cluster)
        })
        .collect())
}

/// Number of edges with exactly one endpoint in `cluster`.
pub fn boundary_edge_count(
    graph: &Graph,
    partition: &Partition,
    cluster: usize,
) -> Result<usize, GraphError> {
    partition.check_graph(graph)?;
    partition.check_cluster(cluster)?;
    Ok(graph
        .edges()
        .iter()
        .filter(|e| {
            (partition.cluster_of(e.head) == cluster) != (partition.cluster_of(e.tail) == cluster)
        })
        .count())
}

/// A cluster's induced subgraph plus an auxiliary node joined to every
/// boundary node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSubgraph {
    pub graph: Graph,
    /// Local id of the auxiliary node; always the last id.
    pub terminal: usize,
    /// Original id of each local node except the terminal.
    pub original_ids: Vec<usize>,
    /// Local ids of the boundary nodes.
    pub boundary: Vec<usize>,
}

impl AugmentedSubgraph {
    pub fn local_id(&self, original: usize) -> Option<usize> {
        self.original_ids.iter().position(|&i| i == original)
    }
}

pub fn augmented_subgraph(
    graph: &Graph,
    partition: &Partition,
    cluster: usize,
) -> Result<AugmentedSubgraph, GraphError> {
    let boundary = cluster_boundary(graph, partition, cluster)?;
    let members = partition.members(cluster);
    let (sub, original_ids) = graph.induced_subgraph(&members)?;
    let terminal = members.len();
    let mut local = vec![usize::MAX; graph.num_nodes()];
    for (new_id, &i) in members.iter().enumerate() {
        local[i] = new_id;
    }
    let boundary: Vec<usize> = boundary.iter().map(|&i| local[i]).collect();
    let mut edge_list: Vec<(usize, usize)> = sub.edges().iter().map(|e| (e.head, e.tail)).collect();
    edge_list.extend(boundary.iter().map(|&i| (terminal, i)));
    Ok(AugmentedSubgraph {
        graph: Graph::new(terminal + 1, &edge_list)?,
        terminal,
        original_ids,
        boundary,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The eight-node, two-cluster example graph (0-based ids).
    pub(crate) fn eight_node_example() -> (Graph, Partition) {
        let one_based = [
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 4),
            (3, 4),
            (4, 5),
            (5, 6),
            (5, 7),
            (6, 7),
            (6, 8),
            (7, 8),
        ];
        let edges: Vec<_> = one_based.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        (
            Graph::new(8, &edges).unwrap(),
            Partition::contiguous(&[4, 4]).unwrap(),
        )
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn orientation_by_id() {
        let g = Graph::new(8, &[(6, 2)]).unwrap();
        assert_eq!(g.edge(0), Edge { head: 2, tail: 6 });
        assert_eq!(g.out_neighbors(2), &[6]);
        assert_eq!(g.in_neighbors(6), &[2]);
    }

    #[test]
    fn empty_edge_list() {
        let g = Graph::new(3, &[]).unwrap();
        assert_eq!(g.degrees(), vec![0, 0, 0]);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn example_degrees() {
        let (g, _) = eight_node_example();
        assert_eq!(g.degrees(), vec![2, 3, 3, 3, 3, 3, 3, 2]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::NodeOutOfRange {
                node: 3,
                num_nodes: 3
            })
        );
        assert_eq!(
            Graph::new(3, &[(1, 1)]),
            Err(GraphError::SelfLoop { node: 1 })
        );
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { a: 0, b: 1 })
        );
    }

    #[test]
    fn incidence_single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let d = g.incidence_matrix().unwrap();
        assert_eq!(
            d.row(0).iter().copied().collect::<Vec<_>>(),
            vec![1.0, -1.0]
        );
    }

    #[test]
    fn incidence_rows_sum_to_zero() {
        let (g, _) = eight_node_example();
        let d = g.incidence_matrix().unwrap();
        for row in d.row_iter() {
            assert_eq!(row.sum(), 0.0);
            assert_eq!(row.iter().filter(|&&v| v != 0.0).count(), 2);
        }
    }

    #[test]
    fn laplacian_small_cases() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let l = g.laplacian().unwrap();
        assert_eq!(l, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));

        let l = complete(4).laplacian().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l[(i, j)], if i == j { 3.0 } else { -1.0 });
            }
        }
        let mut eig: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        for (got, want) in eig.iter().zip([0.0, 4.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_cap_enforced() {
        let g = Graph::new(5, &[]).unwrap();
        assert_eq!(
            g.laplacian_capped(4),
            Err(GraphError::DenseTooLarge { nodes: 5, cap: 4 })
        );
    }

    #[test]
    fn tv_examples() {
        let (g, p) = eight_node_example();
        assert_eq!(g.tv(&[0.7; 8]).unwrap(), 0.0);
        let x = GraphSignal::indicator(8, p.members(0));
        assert_eq!(g.tv(&x).unwrap(), 1.0);
        assert_eq!(g.tv_on_subset(&x, &[(4, 3)]).unwrap(), 1.0);
        assert_eq!(g.tv_on_subset(&x, &[]).unwrap(), 0.0);
        let all: Vec<_> = g.edges().iter().map(|e| (e.head, e.tail)).collect();
        assert_eq!(g.tv_on_subset(&x, &all).unwrap(), g.tv(&x).unwrap());
        assert_eq!(
            g.tv_on_subset(&x, &[(0, 7)]),
            Err(GraphError::UnknownEdge { a: 0, b: 7 })
        );
        assert!(matches!(
            g.tv(&[0.0; 3]),
            Err(GraphError::LengthMismatch { .. })
        ));

        let single = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(single.tv(&[0.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn rounding_ties_go_down() {
        let x = GraphSignal::from(vec![0.5, 0.500001, 0.2, 1.0]);
        assert_eq!(x.rounded().as_slice(), &[0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Partition::new(vec![0, 0, 2], 3),
            Err(GraphError::EmptyCluster { cluster: 1 })
        ));
        assert!(matches!(
            Partition::new(vec![0, 3], 2),
            Err(GraphError::InvalidCluster { .. })
        ));
        let p = Partition::contiguous(&[2, 3]).unwrap();
        assert_eq!(p.assignment(), &[0, 0, 1, 1, 1]);
        assert_eq!(p.sizes(), &[2, 3]);
    }

    #[test]
    fn boundaries_of_example() {
        let (g, p) = eight_node_example();
        assert_eq!(cluster_boundary(&g, &p, 0).unwrap(), vec![3]);
        assert_eq!(cluster_boundary(&g, &p, 1).unwrap(), vec![4]);
        assert_eq!(boundary_edge_count(&g, &p, 0).unwrap(), 1);
        assert_eq!(boundary_edge_count(&g, &p, 1).unwrap(), 1);
        assert!(matches!(
            cluster_boundary(&g, &p, 2),
            Err(GraphError::InvalidCluster { .. })
        ));
    }

    #[test]
    fn boundary_without_cross_edges() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let p = Partition::contiguous(&[2, 2]).unwrap();
        assert!(cluster_boundary(&g, &p, 0).unwrap().is_empty());
        assert_eq!(boundary_edge_count(&g, &p, 0).unwrap(), 0);
    }

    #[test]
    fn complete_bipartition_boundary() {
        let g = complete(7);
        let p = Partition::contiguous(&[3, 4]).unwrap();
        assert_eq!(cluster_boundary(&g, &p, 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(cluster_boundary(&g, &p, 1).unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(boundary_edge_count(&g, &p, 0).unwrap(), 12);
        assert_eq!(boundary_edge_count(&g, &p, 1).unwrap(), 12);
    }

    #[test]
    fn augmented_example() {
        let (g, p) = eight_node_example();
        let aug = augmented_subgraph(&g, &p, 0).unwrap();
        assert_eq!(aug.graph.num_nodes(), 5);
        assert_eq!(aug.terminal, 4);
        assert_eq!(aug.original_ids, vec![0, 1, 2, 3]);
        let mut edges: Vec<_> = aug.graph.edges().iter().map(|e| (e.head, e.tail)).collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn augmented_degenerate_cases() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let p = Partition::contiguous(&[2, 2]).unwrap();
        let aug = augmented_subgraph(&g, &p, 0).unwrap();
        assert_eq!(aug.graph.num_edges(), 1);
        assert_eq!(aug.graph.degree(aug.terminal), 0);

        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let p = Partition::new(vec![0, 1, 1], 2).unwrap();
        let aug = augmented_subgraph(&g, &p, 0).unwrap();
        assert_eq!(aug.graph.num_nodes(), 2);
        assert_eq!(aug.graph.edges(), &[Edge { head: 0, tail: 1 }]);
    }

    #[test]
    fn connectivity() {
        let (g, _) = eight_node_example();
        assert!(g.is_connected());
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 1, 1]);
    }
}

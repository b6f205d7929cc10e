//! Integer max-flow (Dinic) and circulations with lower bounds.
//!
//! Infinite capacities are represented internally by one more than the sum of
//! all finite capacities and lower bounds in the network, which no feasible
//! flow through finite arcs can reach.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(i64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub upper: Capacity,
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    num_nodes: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Flow on each arc, in arc-id order.
    pub flows: Vec<i64>,
    /// Nodes reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
    /// Nodes that can still reach the sink in the final residual network.
    pub sink_side: Vec<bool>,
    /// Whether the value reached the stand-in for infinity.
    pub unbounded: bool,
}

impl MaxFlow {
    /// The minimum cut is unique iff every node is pinned to one side.
    pub fn min_cut_is_unique(&self) -> bool {
        self.source_side
            .iter()
            .zip(&self.sink_side)
            .all(|(&s, &t)| s || t)
    }
}

impl FlowNetwork {
    pub fn new(num_nodes: usize) -> Self {
        Self {
            num_nodes,
            arcs: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn add_node(&mut self) -> usize {
        self.num_nodes += 1;
        self.num_nodes - 1
    }

    /// Adds an arc and returns its id. Panics on out-of-range endpoints or
    /// `lower > upper`.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: Capacity) -> usize {
        assert!(
            from < self.num_nodes && to < self.num_nodes,
            "arc endpoint out of range"
        );
        assert!(lower >= 0, "negative lower bound");
        if let Capacity::Finite(c) = upper {
            assert!(lower <= c, "lower bound exceeds capacity");
        }
        self.arcs.push(Arc {
            from,
            to,
            lower,
            upper,
        });
        self.arcs.len() - 1
    }

    /// The integer used for infinite capacities.
    pub fn infinity(&self) -> i64 {
        1 + self
            .arcs
            .iter()
            .map(|a| match a.upper {
                Capacity::Finite(c) => c + a.lower,
                Capacity::Infinite => a.lower,
            })
            .sum::<i64>()
    }

    fn resolve(&self, cap: Capacity, inf: i64) -> i64 {
        match cap {
            Capacity::Finite(c) => c,
            Capacity::Infinite => inf,
        }
    }

    /// Maximum `source -> sink` flow. Lower bounds are ignored here; use
    /// [`FlowNetwork::find_circulation`] for those.
    pub fn max_flow(&self, source: usize, sink: usize) -> MaxFlow {
        let inf = self.infinity();
        let mut dinic = Dinic::new(self.num_nodes);
        let handles: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| dinic.add_edge(a.from, a.to, self.resolve(a.upper, inf)))
            .collect();
        let value = dinic.run(source, sink, inf);
        let flows = handles.iter().map(|&h| dinic.flow_on(h)).collect();
        MaxFlow {
            value,
            flows,
            source_side: dinic.reachable_from(source),
            sink_side: dinic.reaching(sink),
            unbounded: value >= inf,
        }
    }

    /// A flow satisfying `lower <= f <= upper` on every arc and conservation at
    /// every node, if one exists.
    pub fn find_circulation(&self) -> Option<Vec<i64>> {
        let inf = self.infinity();
        let n = self.num_nodes;
        let (super_source, super_sink) = (n, n + 1);
        let mut dinic = Dinic::new(n + 2);
        let mut excess = vec![0i64; n];
        let handles: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| {
                excess[a.to] += a.lower;
                excess[a.from] -= a.lower;
                let cap = match a.upper {
                    Capacity::Finite(c) => c - a.lower,
                    Capacity::Infinite => inf,
                };
                dinic.add_edge(a.from, a.to, cap)
            })
            .collect();
        let mut required = 0;
        for (v, &b) in excess.iter().enumerate() {
            if b > 0 {
                dinic.add_edge(super_source, v, b);
                required += b;
            } else if b < 0 {
                dinic.add_edge(v, super_sink, -b);
            }
        }
        if dinic.run(super_source, super_sink, inf) < required {
            return None;
        }
        Some(
            self.arcs
                .iter()
                .zip(&handles)
                .map(|(a, &h)| a.lower + dinic.flow_on(h))
                .collect(),
        )
    }

    /// Checks bounds on every arc and conservation at every node.
    pub fn is_circulation(&self, flows: &[i64]) -> bool {
        if flows.len() != self.arcs.len() {
            return false;
        }
        let mut net = vec![0i64; self.num_nodes];
        for (a, &f) in self.arcs.iter().zip(flows) {
            if f < a.lower {
                return false;
            }
            if let Capacity::Finite(c) = a.upper {
                if f > c {
                    return false;
                }
            }
            net[a.from] -= f;
            net[a.to] += f;
        }
        net.iter().all(|&b| b == 0)
    }
}

struct ResidualEdge {
    to: usize,
    cap: i64,
    original: i64,
}

/// Dinic's blocking-flow algorithm on a residual graph.
struct Dinic {
    edges: Vec<ResidualEdge>,
    adjacency: Vec<Vec<usize>>,
    level: Vec<i64>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            level: vec![-1; n],
            next: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(ResidualEdge {
            to,
            cap,
            original: cap,
        });
        self.edges.push(ResidualEdge {
            to: from,
            cap: 0,
            original: 0,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    fn flow_on(&self, id: usize) -> i64 {
        self.edges[id].original - self.edges[id].cap
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(-1);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, u: usize, sink: usize, pushed: i64) -> i64 {
        if u == sink {
            return pushed;
        }
        while self.next[u] < self.adjacency[u].len() {
            let e = self.adjacency[u][self.next[u]];
            let v = self.edges[e].to;
            if self.edges[e].cap > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, sink, pushed.min(self.edges[e].cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    /// Runs to completion or until the flow reaches `limit`.
    fn run(&mut self, source: usize, sink: usize, limit: i64) -> i64 {
        if source == sink {
            return 0;
        }
        let mut total = 0;
        while total < limit && self.bfs(source, sink) {
            self.next.fill(0);
            loop {
                let pushed = self.dfs(source, sink, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn reachable_from(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adjacency.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &e in &self.adjacency[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn reaching(&self, sink: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adjacency.len()];
        seen[sink] = true;
        let mut stack = vec![sink];
        while let Some(v) = stack.pop() {
            // Residual arc u -> v exists iff the paired edge stored at v has
            // its twin (u -> v) with positive capacity.
            for &e in &self.adjacency[v] {
                let u = self.edges[e].to;
                if self.edges[e ^ 1].cap > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

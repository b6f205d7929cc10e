//! Shared generators and brute-force references for the integration tests.
#![allow(dead_code)]

use plsbm_core::graph::{Graph, Partition};
use plsbm_core::sbm::{generate, SbmParams};
use plsbm_core::solver::SeedValues;
use proptest::prelude::*;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random simple graph: node count in `nodes`, each pair present with
/// probability `density`.
pub fn arb_graph(
    nodes: std::ops::RangeInclusive<usize>,
    density: f64,
) -> impl Strategy<Value = Graph> {
    (nodes, any::<u64>()).prop_map(move |(n, seed)| random_graph(n, density, seed))
}

pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                // Random endpoint order exercises canonicalization.
                edges.push(if rng.random() { (i, j) } else { (j, i) });
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// A connected two-block SBM graph with `2..=max_seeds` binary seeds, at
/// least one of each value.
pub fn connected_seeded_instance(
    max_nodes: usize,
    max_seeds: usize,
    seed: u64,
) -> (Graph, Partition, SeedValues) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(4..=max_nodes);
        let n1 = rng.random_range(2..=n - 2);
        let p_in = rng.random_range(0.3..0.9);
        let p_out = rng.random_range(0.05..0.4);
        let params = SbmParams::new(vec![n1, n - n1], p_in, p_out).unwrap();
        let (g, truth) = generate(&params, rng.random()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let k = rng.random_range(2..=max_seeds.min(n));
        let nodes = index::sample(&mut rng, n, k).into_vec();
        let mut values: Vec<(usize, f64)> = nodes
            .iter()
            .map(|&i| (i, if rng.random() { 1.0 } else { 0.0 }))
            .collect();
        values[0].1 = 1.0;
        values[1].1 = 0.0;
        return (g, truth, SeedValues::new(values));
    }
}

/// Minimum TV over all binary signals agreeing with binary seeds, by exhaustion.
pub fn brute_force_min_tv(g: &Graph, seeds: &SeedValues) -> i64 {
    let n = g.num_nodes();
    let mut fixed = vec![None; n];
    for &(i, v) in seeds.as_slice() {
        fixed[i] = Some(v == 1.0);
    }
    let free: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
    let mut best = i64::MAX;
    let mut x = vec![false; n];
    for mask in 0u64..(1 << free.len()) {
        for i in 0..n {
            if let Some(v) = fixed[i] {
                x[i] = v;
            }
        }
        for (b, &i) in free.iter().enumerate() {
            x[i] = mask >> b & 1 == 1;
        }
        let tv = g.edges().iter().filter(|e| x[e.head] != x[e.tail]).count() as i64;
        best = best.min(tv);
    }
    best
}

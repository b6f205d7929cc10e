use plsbm_core::clusterer::{accuracy, cluster, cluster_seed_set};
use plsbm_core::sbm::{SbmInstance, SbmParams};
use plsbm_core::solver::SolverConfig;
use proptest::prelude::*;

fn config() -> SolverConfig {
    SolverConfig {
        max_iters: 400,
        ..SolverConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Relabeling clusters permutes the score vectors and nothing else.
    #[test]
    fn label_permutation_equivariance(seed in any::<u64>(), shift in 1usize..3) {
        let params = SbmParams::new(vec![8, 8, 8], 0.7, 0.1).unwrap();
        let inst = SbmInstance::sample(&params, 2, seed).unwrap();
        let labels = inst.seeds.labeled();
        let perm = |k: usize| (k + shift) % 3;
        let permuted: Vec<_> = labels.iter().map(|&(i, k)| (i, perm(k))).collect();
        let a = cluster(&inst.graph, &labels, &config()).unwrap();
        let b = cluster(&inst.graph, &permuted, &config()).unwrap();
        for k in 0..3 {
            prop_assert_eq!(&a.scores[k], &b.scores[perm(k)]);
        }
        for i in 0..inst.graph.num_nodes() {
            let best = a.scores.iter().map(|s| s[i]).fold(f64::NEG_INFINITY, f64::max);
            let unique_best = a.scores.iter().filter(|s| s[i] == best).count() == 1;
            if unique_best {
                prop_assert_eq!(perm(a.assignment[i]), b.assignment[i]);
            }
        }
    }

    #[test]
    fn seeds_decode_to_their_labels(seed in any::<u64>()) {
        let params = SbmParams::new(vec![10, 12], 0.5, 0.2).unwrap();
        let inst = SbmInstance::sample(&params, 3, seed).unwrap();
        let r = cluster_seed_set(&inst.graph, &inst.seeds, &config()).unwrap();
        for (node, k) in inst.seeds.labeled() {
            prop_assert_eq!(r.assignment[node], k);
        }
        let acc = accuracy(&r, &inst.truth, &inst.seeds);
        prop_assert_eq!(acc.evaluated, 22 - 6);
        prop_assert!((0.0..=1.0).contains(&acc.value));
        let again = cluster_seed_set(&inst.graph, &inst.seeds, &config()).unwrap();
        prop_assert_eq!(r.assignment, again.assignment);
    }
}

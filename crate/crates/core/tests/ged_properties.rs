use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stancegraph::metrics::{ged, ged_normalizer, ged_raw};

mod common;

fn graphs(seed: u64, count: usize) -> Vec<stancegraph::ExplanationGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| common::random_small_graph(&mut rng, 4)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn equals_brute_force(seed in any::<u64>()) {
        let g = graphs(seed, 2);
        prop_assert_eq!(ged_raw(&g[0], &g[1]).unwrap(), common::brute_force_ged(&g[0], &g[1]));
    }

    #[test]
    fn symmetric_and_bounded(seed in any::<u64>()) {
        let g = graphs(seed, 2);
        let (ab, ba) = (ged(&g[0], &g[1]).unwrap(), ged(&g[1], &g[0]).unwrap());
        prop_assert_eq!(ab, ba);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ged_normalizer(&g[0], &g[1]), ged_normalizer(&g[1], &g[0]));
    }

    #[test]
    fn raw_distance_obeys_triangle_inequality(seed in any::<u64>()) {
        let g = graphs(seed, 3);
        let d = |i: usize, j: usize| ged_raw(&g[i], &g[j]).unwrap();
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2));
    }

    #[test]
    fn zero_exactly_for_equal_graphs(seed in any::<u64>()) {
        let g = graphs(seed, 2);
        prop_assert_eq!(ged_raw(&g[0], &g[0]).unwrap(), 0);
        let edge_set = |i: usize| g[i].edges().iter().map(|e| e.sentence()).collect::<std::collections::BTreeSet<_>>();
        prop_assert_eq!(ged_raw(&g[0], &g[1]).unwrap() == 0, edge_set(0) == edge_set(1));
    }
}

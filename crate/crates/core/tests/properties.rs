//! Cross-module invariants, exercised with both seeded sweeps and proptest.

use ocol_core::algorithms::{
    AdviceCBip, AdviceFirstFit, CBip, FirstFit, ParityFirstFit, Registry, ADVICE_FIRST_FIT,
    FIRST_FIT,
};
use ocol_core::analysis::nonisomorphic_trees;
use ocol_core::graph::{bipartition, is_proper_coloring, Graph};
use ocol_core::instances::{
    generate, prufer_decode, prufer_encode, random_labeled_tree, Family, InstanceSpec,
};
use ocol_core::reveal::{
    make_predictions, make_predictions_from, run, ArrivalOrder, ErrorMode, PredictionVector,
};
use ocol_core::rng::seeded;
use ocol_core::Vertex;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn prufer_round_trip_ten_thousand_sequences() {
    let mut rng = seeded(60_001);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..40usize);
        let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n as Vertex)).collect();
        let tree = prufer_decode(&seq, n).unwrap();
        assert!(tree.is_tree());
        assert_eq!(prufer_encode(&tree).unwrap(), seq);
    }
}

#[test]
fn every_generated_tree_validates_and_bipartitions() {
    let mut rng = seeded(9);
    for _ in 0..300 {
        let n = rng.gen_range(1..120usize);
        let g = random_labeled_tree(n, &mut rng);
        assert!(g.is_tree());
        assert_eq!(g.edge_count(), n - 1);
        let b = bipartition(&g).expect("trees are bipartite");
        assert!(is_proper_coloring(&g, &b.coloring()));
    }
}

#[test]
fn labeled_tree_sampling_is_uniform_on_four_vertices() {
    // 4^2 = 16 labeled trees on 4 vertices, one per Prüfer sequence.
    // Expected count 1000 per tree over 16000 samples; sigma ≈ 30.6, so a
    // 5-sigma window is ±153.
    let mut rng = seeded(314159);
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..16_000 {
        let g = random_labeled_tree(4, &mut rng);
        *counts.entry(g.edges().to_vec()).or_insert(0u32) += 1;
    }
    assert_eq!(counts.len(), 16);
    for (edges, c) in counts {
        assert!(
            (i64::from(c) - 1000).abs() <= 153,
            "tree {edges:?} sampled {c} times"
        );
    }
}

#[test]
fn first_fit_on_trees_stays_under_log_bound_exhaustively() {
    // All orders of all trees with up to 8 vertices.
    let registry = Registry::standard();
    for n in 1..=8usize {
        let bound = (n as f64).log2() + 1.0 + 1e-9;
        for tree in nonisomorphic_trees(n) {
            let dist =
                ocol_core::analysis::enumerate_orders(&tree, &registry, FIRST_FIT, None, 9)
                    .unwrap();
            assert!(
                f64::from(dist.max_colors()) <= bound,
                "n = {n}, max = {}",
                dist.max_colors()
            );
        }
    }
}

#[test]
fn first_fit_on_large_trees_stays_under_log_bound_sampled() {
    let mut rng = seeded(88);
    for _ in 0..40 {
        let n = rng.gen_range(100..3000usize);
        let g = random_labeled_tree(n, &mut rng);
        let order = ArrivalOrder::sample_from(n, &mut rng);
        let mut alg = FirstFit::new();
        let t = run(&g, &order, None, &mut alg).unwrap();
        assert!(f64::from(t.colors_used()) <= (n as f64).log2() + 1.0 + 1e-9);
    }
}

#[test]
fn colors_used_equals_distinct_count_for_first_fit_family() {
    let mut rng = seeded(123);
    let registry = Registry::standard();
    for _ in 0..200 {
        let n = rng.gen_range(2..80usize);
        let g = random_labeled_tree(n, &mut rng);
        let b = bipartition(&g).unwrap();
        let k = rng.gen_range(0..=n / 2);
        let p = make_predictions_from(&b, k, &mut rng).unwrap();
        let order = ArrivalOrder::sample_from(n, &mut rng);
        for name in [FIRST_FIT, ADVICE_FIRST_FIT] {
            let mut alg = registry.create(name).unwrap();
            let t = run(&g, &order, Some(&p), alg.as_mut()).unwrap();
            assert_eq!(
                t.distinct_color_count(),
                t.colors_used() as usize,
                "{name} skipped a color"
            );
        }
        // The weaker invariant holds for everyone.
        for name in ["cbip", "advice-cbip", "parity-first-fit"] {
            let mut alg = registry.create(name).unwrap();
            let t = run(&g, &order, Some(&p), alg.as_mut()).unwrap();
            assert!(t.distinct_color_count() <= t.colors_used() as usize);
        }
    }
}

#[test]
fn all_algorithms_always_produce_proper_colorings() {
    let mut rng = seeded(456);
    let registry = Registry::standard();
    for trial in 0..150 {
        let n = rng.gen_range(2..60usize);
        let g = random_labeled_tree(n, &mut rng);
        let b = bipartition(&g).unwrap();
        let k = rng.gen_range(0..=n);
        let p = make_predictions_from(&b, k, &mut rng).unwrap();
        let order = ArrivalOrder::sample_from(n, &mut rng);
        for name in registry.names() {
            let mut alg = registry.create(name).unwrap();
            let t = run(&g, &order, Some(&p), alg.as_mut())
                .unwrap_or_else(|e| panic!("{name} trial {trial}: {e}"));
            let colors: Vec<u32> = (0..n as Vertex).map(|v| t.color_of(v)).collect();
            assert!(is_proper_coloring(&g, &colors), "{name} trial {trial}");
        }
    }
}

#[test]
fn error_free_advice_keeps_trees_two_colored() {
    let mut rng = seeded(777);
    for _ in 0..200 {
        let n = rng.gen_range(2..100usize);
        let g = random_labeled_tree(n, &mut rng);
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::None).unwrap();
        let order = ArrivalOrder::sample_from(n, &mut rng);
        let mut aff = AdviceFirstFit::new();
        assert_eq!(run(&g, &order, Some(&p), &mut aff).unwrap().colors_used(), 2);
        let mut pff = ParityFirstFit::new();
        assert!(run(&g, &order, Some(&p), &mut pff).unwrap().colors_used() <= 2);
        let mut acb = AdviceCBip::new();
        assert!(run(&g, &order, Some(&p), &mut acb).unwrap().colors_used() <= 2);
    }
}

#[test]
fn cbip_family_rejects_every_odd_cycle_and_no_bipartite_graph() {
    let mut rng = seeded(31);
    // Odd cycles of length 3..=15.
    for half in 1..=7usize {
        let n = 2 * half + 1;
        let edges: Vec<(Vertex, Vertex)> = (0..n)
            .map(|i| (i as Vertex, ((i + 1) % n) as Vertex))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let order = ArrivalOrder::sample_from(n, &mut rng);
        let mut alg = CBip::new();
        assert!(run(&g, &order, None, &mut alg).is_err(), "odd cycle n={n}");
    }
    // Random bipartite graphs never trip the detector.
    for _ in 0..60 {
        let n = rng.gen_range(2..60usize);
        let p = rng.gen_range(0.0..1.0);
        let g = ocol_core::instances::random_bipartite(n, p, &mut rng);
        let b = bipartition(&g).unwrap();
        let pv = make_predictions(&b, &ErrorMode::None).unwrap();
        let order = ArrivalOrder::sample_from(n, &mut rng);
        let mut cb = CBip::new();
        assert!(run(&g, &order, None, &mut cb).is_ok());
        let mut acb = AdviceCBip::new();
        assert!(run(&g, &order, Some(&pv), &mut acb).is_ok());
    }
}

#[test]
fn spider_and_binary_tree_families_run_clean() {
    let registry = Registry::standard();
    for spec in [
        InstanceSpec {
            family: Family::Spider { legs: 5, leg_len: 4 },
            n: 21,
            seed: 0,
        },
        InstanceSpec {
            family: Family::CompleteBinaryTree,
            n: 31,
            seed: 0,
        },
    ] {
        let g = generate(&spec).unwrap();
        let order = ArrivalOrder::sample(g.vertex_count(), 5);
        let mut alg = registry.create(FIRST_FIT).unwrap();
        let t = run(&g, &order, None, alg.as_mut()).unwrap();
        assert!(t.colors_used() >= 2);
    }
}

proptest! {
    #[test]
    fn prufer_round_trip(seq in proptest::collection::vec(0u32..12, 0..11)) {
        let n = seq.len() + 2;
        let seq: Vec<Vertex> = seq.into_iter().map(|x| x % n as u32).collect();
        let tree = prufer_decode(&seq, n).unwrap();
        prop_assert!(tree.is_tree());
        prop_assert_eq!(prufer_encode(&tree).unwrap(), seq);
    }

    #[test]
    fn k_min_invariant_under_component_flip(seed in 0u64..5000, k in 0usize..20) {
        let mut rng = seeded(seed);
        let n = 30;
        let g = random_labeled_tree(n, &mut rng);
        let b = bipartition(&g).unwrap();
        let k = k.min(n);
        let p = make_predictions_from(&b, k, &mut rng).unwrap();
        // Flip the delivered bits of the whole (single) component: k_min is
        // unchanged even though k becomes n - k.
        let flipped: Vec<u8> = p.delivered_bits().iter().map(|&b| b ^ 1).collect();
        let q = PredictionVector::from_delivered(&b, flipped);
        prop_assert_eq!(p.k_min(), q.k_min());
        prop_assert_eq!(q.k(), n - p.k());
        prop_assert!(p.k_min() <= p.k());
    }

    #[test]
    fn bipartition_of_any_tree_succeeds(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let n = 1 + (seed as usize % 64);
        let g = random_labeled_tree(n, &mut rng);
        let b = bipartition(&g).unwrap();
        prop_assert!(is_proper_coloring(&g, &b.coloring()));
    }
}

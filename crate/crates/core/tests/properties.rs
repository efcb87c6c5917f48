//! Cross-module invariants on randomized inputs.

use proptest::prelude::*;
use sigmacol::catalogue;
use sigmacol::colouring::{validate_colouring, ListAssignment, PipelineOutcome, PipelineParams};
use sigmacol::discharge;
use sigmacol::graph::{degeneracy_ordering, SimpleGraph};
use sigmacol::hardcore::{ActivityVector, HardcoreModel};
use sigmacol::io;
use sigmacol::polytope::{edmonds_membership, MarginalVector};
use sigmacol::sigma::{conflict_graph, SigmaSystem};
use sigmacol::{clique, rat, Rational};
use std::collections::BTreeMap;

fn random_graph(n: u32, density: u64, seed: u64) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0xC0FFEE);
    for u in 0..n {
        for v in (u + 1)..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state % 100 < density {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn face_degrees_double_count_edges(n in 5u32..24, seed in 0u64..5000) {
        let e = catalogue::random_planar_seed(n, 0.25, seed).unwrap();
        let trace = e.trace_faces().unwrap();
        let total: usize = trace.walks.iter().map(|w| w.degree()).sum();
        prop_assert_eq!(total, 2 * e.graph().edge_count());
        prop_assert!(e.euler_residual().unwrap() >= e.surface_chi());
    }

    #[test]
    fn embedded_round_trip_is_bit_exact(n in 4u32..20, seed in 0u64..5000) {
        let e = catalogue::random_planar_triangulation(n, seed).unwrap();
        let text = io::write_embedded(&e);
        let back = io::parse_embedded(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(io::write_embedded(&back), text);
    }

    #[test]
    fn sigma_and_list_round_trips(n in 4u32..24, seed in 0u64..5000) {
        let g = catalogue::random_degenerate_graph(n, 4, seed);
        let s = catalogue::random_sigma(&g, 0.6, seed);
        let text = io::write_sigma(&s);
        prop_assert_eq!(io::parse_sigma(&text).unwrap(), s);
        let lists = catalogue::random_lists(&g, 4, 9, seed);
        let ltext = io::write_lists(&lists);
        prop_assert_eq!(io::parse_lists(&ltext).unwrap(), lists);
    }

    #[test]
    fn conflict_graph_degenerate_cases(n in 3u32..16, density in 20u64..70, seed in 0u64..5000) {
        let g = random_graph(n, density, seed);
        let empty = conflict_graph(&g, &SigmaSystem::empty()).unwrap();
        prop_assert_eq!(&empty.base, &g);
        let full = conflict_graph(&g, &SigmaSystem::full_neighbourhood(&g)).unwrap();
        prop_assert_eq!(&full.base, &g.square());
    }

    #[test]
    fn clique_matches_exhaustive(n in 4u32..15, density in 25u64..75, seed in 0u64..5000) {
        let g = random_graph(n, density, seed);
        let bb = clique::max_clique(&g, 1 << 26);
        prop_assert!(bb.is_exact());
        prop_assert_eq!(bb.size(), clique::max_clique_exhaustive(&g));
    }

    #[test]
    fn degeneracy_ordering_verifies(n in 2u32..30, density in 10u64..80, seed in 0u64..5000) {
        let g = random_graph(n, density, seed);
        let d = degeneracy_ordering(&g);
        prop_assert!(d.verify(&g));
    }

    #[test]
    fn charges_conserve_on_random_completions(n in 6u32..30, seed in 0u64..5000, zeta in 3i64..20) {
        let e = catalogue::random_planar_seed(n, 0.3, seed).unwrap();
        let m = e.complete_to_edge_maximal().unwrap();
        let ledger = discharge::compute_charges(&m, zeta);
        prop_assert_eq!(ledger.initial_total(), ledger.final_total());
        let expected = 12 * m.graph().edge_count() as i64 - 36 * m.graph().vertex_count() as i64;
        prop_assert_eq!(ledger.initial_total(), expected);
    }

    #[test]
    fn completion_is_idempotent_on_seeds(n in 5u32..20, seed in 0u64..5000) {
        let e = catalogue::random_planar_seed(n, 0.35, seed).unwrap();
        let once = e.complete_to_edge_maximal().unwrap();
        let twice = once.complete_to_edge_maximal().unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn detection_is_deterministic(n in 6u32..22, seed in 0u64..5000, zeta in 3i64..12) {
        let e = catalogue::random_planar_seed(n, 0.2, seed)
            .unwrap()
            .complete_to_edge_maximal()
            .unwrap();
        let a = discharge::detect_structure(&e, zeta).unwrap();
        let b = discharge::detect_structure(&e, zeta).unwrap();
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        if let Some(w) = a.witness() {
            prop_assert!(discharge::validate_witness(&e, w).unwrap().valid);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hardcore_marginals_stay_in_polytope(idx in 0usize..50, num in 1i64..8, seed in 0u64..1000) {
        let cat = catalogue::small_multigraph_catalogue();
        let h = cat[idx % cat.len()].clone();
        let lam: BTreeMap<_, Rational> = h
            .edge_ids()
            .enumerate()
            .map(|(i, e)| (e, rat(num + (i as i64 + seed as i64) % 5, 4)))
            .collect();
        let model = HardcoreModel::new(h.clone(), ActivityVector::new(lam).unwrap(), 24).unwrap();
        // total probability is exactly one
        let mut total = rat(0, 1);
        for m in model.matchings().to_vec() {
            total += model.probability(&m);
        }
        prop_assert_eq!(total, rat(1, 1));
        // marginals always pass membership at scale 1
        let x = model.marginals();
        prop_assert!(edmonds_membership(&h, &x, rat(1, 1)).unwrap().inside);
    }

    #[test]
    fn membership_is_monotone(idx in 0usize..50, seed in 0u64..1000) {
        let cat = catalogue::small_multigraph_catalogue();
        let h = cat[idx % cat.len()].clone();
        let denom = (2 * h.max_degree().max(1)) as i64;
        let x = MarginalVector::uniform(&h, rat(1, denom));
        prop_assert!(edmonds_membership(&h, &x, rat(1, 1)).unwrap().inside);
        let mut smaller = x.clone();
        if let Some(first) = h.edge_ids().next() {
            smaller.values.insert(first, rat(1, denom * (2 + (seed % 3) as i64)));
        }
        prop_assert!(edmonds_membership(&h, &smaller, rat(1, 1)).unwrap().inside);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pipeline_output_always_validates(n in 6u32..16, seed in 0u64..500) {
        let e = catalogue::random_planar_seed(n, 0.2, seed).unwrap();
        let s = catalogue::random_sigma(e.graph(), 0.5, seed);
        let delta_sigma = s.beta();
        let lists = ListAssignment::new(catalogue::random_lists(
            e.graph(),
            2 * delta_sigma + e.graph().max_degree() + 4,
            (2 * delta_sigma + e.graph().max_degree() + 10) as u32,
            seed,
        ));
        let params = PipelineParams {
            zeta: Some(6),
            seed,
            ..Default::default()
        };
        let out = sigmacol::colouring::pipeline_sigma_colour(&e, &s, &lists, &params).unwrap();
        match out {
            PipelineOutcome::Coloured { colouring, .. } => {
                validate_colouring(e.graph(), &s, &colouring, Some(&lists)).unwrap();
            }
            PipelineOutcome::Failed { .. } => {
                // ample lists: the exact fallback must have found a colouring
                prop_assert!(false, "pipeline failed with generous lists");
            }
        }
    }
}

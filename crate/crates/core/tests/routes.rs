use girthspec::cycles::{
    brute_force_counts, counts_from_spectrum, g_plus_4_cross_check, tree_walk_count,
    BruteForceLimits, Route,
};
use girthspec::edge_matrix::{edge_spectrum_direct, trace_power_counts};
use girthspec::generate::{random_bipartite, random_biregular};
use girthspec::io::{parse_alist, write_alist};
use girthspec::multiset::{matching_distance, within_matching_distance};
use girthspec::pipeline::run_transfer;
use girthspec::spectra::{adjacency_spectrum, SpectrumConfig};
use girthspec::{families, Girth};
use num_bigint::BigUint;
use proptest::prelude::*;

const FORCED: BruteForceLimits = BruteForceLimits {
    max_edges: 200,
    max_length: 12,
    force: true,
};

fn degree_pair() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![
        (2usize, 3usize),
        (2, 4),
        (3, 3),
        (3, 4),
        (2, 6),
        (3, 6),
        (4, 4),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn all_routes_agree_on_biregular_graphs((d_v, d_c) in degree_pair(), scale in 2usize..5, seed in 0u64..100_000) {
        let g = random_biregular(scale * d_c, scale * d_v, d_v, d_c, seed).unwrap();
        let run = run_transfer(&g, &SpectrumConfig::default(), None).unwrap();
        let trace = trace_power_counts(&g, None).unwrap();
        let girth = g.profile().girth.finite().unwrap();
        let (_, direct) = girthspec::pipeline::run_direct(&g, &Default::default(), None).unwrap();
        let brute = brute_force_counts(&g, Some(2 * girth - 2), FORCED).unwrap();
        prop_assert_eq!(&run.counts.counts, &trace.counts);
        prop_assert_eq!(&direct.counts, &trace.counts);
        prop_assert_eq!(&brute.counts, &trace.counts);
        prop_assert!(run.counts.get(girth).unwrap() >= 1);
    }

    #[test]
    fn derived_spectrum_matches_direct_decomposition((d_v, d_c) in degree_pair(), scale in 2usize..6, seed in 0u64..100_000) {
        let g = random_biregular(scale * d_c, scale * d_v, d_v, d_c, seed).unwrap();
        let run = run_transfer(&g, &SpectrumConfig::default(), None).unwrap();
        let derived = &run.transfer.spectrum;
        let direct = edge_spectrum_direct(&g, &Default::default()).unwrap();
        let tol = 1e-5 * derived.max_abs().max(1.0);
        let d = matching_distance(derived.eigenvalues(), direct.eigenvalues()).unwrap();
        prop_assert!(d < tol, "matching distance {d}");

        // Symmetric about the origin and closed under conjugation.
        let negated = derived.map(|z| -z);
        let conjugated = derived.map(|z| z.conj());
        prop_assert!(within_matching_distance(derived.eigenvalues(), &negated, 1e-9));
        prop_assert!(within_matching_distance(derived.eigenvalues(), &conjugated, 1e-9));
        prop_assert_eq!(derived.total(), 2 * g.edge_count());
    }

    #[test]
    fn trace_equals_brute_force_on_any_graph(n in 2usize..9, m in 2usize..9, extra in 0usize..12, seed in 0u64..100_000) {
        let edges = (n + m + extra).min(n * m);
        let g = random_bipartite(n, m, edges, seed).unwrap();
        if let Girth::Finite(girth) = g.profile().girth {
            let trace = trace_power_counts(&g, None).unwrap();
            let brute = brute_force_counts(&g, Some(2 * girth - 2), FORCED).unwrap();
            prop_assert_eq!(trace.counts, brute.counts);
        }
    }

    #[test]
    fn direct_spectrum_counts_irregular_graphs(n in 3usize..8, m in 3usize..8, extra in 0usize..8, seed in 0u64..100_000) {
        let g = random_bipartite(n, m, (n + m + extra).min(n * m), seed).unwrap();
        let girth = g.profile().girth;
        if girth.finite().is_some() {
            let es = edge_spectrum_direct(&g, &Default::default()).unwrap();
            let counts = counts_from_spectrum(&es, girth, None, Route::DirectEdgeSpectrum).unwrap();
            prop_assert_eq!(counts.counts, trace_power_counts(&g, None).unwrap().counts);
        }
    }

    #[test]
    fn tree_walks_count_short_closed_walks((d_v, d_c) in degree_pair(), scale in 3usize..8, seed in 0u64..100_000) {
        let g = random_biregular(scale * d_c, scale * d_v, d_v, d_c, seed).unwrap();
        let girth = g.profile().girth.finite().unwrap();
        let spec = adjacency_spectrum(&g, &SpectrumConfig::default()).unwrap();
        for ell in (0..girth).step_by(2) {
            let omega = BigUint::from(g.left_count()) * tree_walk_count(d_v, d_c, ell)
                + BigUint::from(g.right_count()) * tree_walk_count(d_c, d_v, ell);
            let trace = spec.power_sum(ell as u32);
            let expected: u128 = omega.try_into().unwrap();
            prop_assert!((trace - expected as f64).abs() < 1e-6 * trace.abs().max(1.0));
        }
    }

    #[test]
    fn g_plus_4_matches_spectral_count(d_c in 3usize..6, scale in 4usize..12, seed in 0u64..100_000) {
        let g = random_biregular(scale * d_c, scale * 2, 2, d_c, seed).unwrap();
        let girth = g.profile().girth.finite().unwrap();
        prop_assume!(girth >= 6);
        let run = run_transfer(&g, &SpectrumConfig::default(), None).unwrap();
        let x = g_plus_4_cross_check(&g, &run.adjacency, &run.counts).unwrap();
        prop_assert_eq!(x.count_u64(), run.counts.get(girth + 4));
    }

    #[test]
    fn alist_round_trip_of_generated_graphs(scale in 1usize..6, seed in 0u64..100_000) {
        let g = random_biregular(4 * scale, 3 * scale, 3, 4, seed).unwrap();
        let text = write_alist(&g);
        let back = parse_alist(&text).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(&back.graph, &g);
        let normalized = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        prop_assert_eq!(normalized(&write_alist(&back.graph)), normalized(&text));
    }
}

#[test]
fn heawood_graph_through_every_route() {
    let g = families::heawood();
    let run = run_transfer(&g, &SpectrumConfig::default(), None).unwrap();
    let brute = brute_force_counts(&g, Some(10), BruteForceLimits::default()).unwrap();
    assert_eq!(run.counts.counts, brute.counts);
    assert_eq!(run.counts.get(6), Some(28));
    let x = g_plus_4_cross_check(&g, &run.adjacency, &run.counts).unwrap();
    assert_eq!(x.count_u64(), run.counts.get(10));
}

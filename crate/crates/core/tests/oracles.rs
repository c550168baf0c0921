mod common;

use common::{acyclic_without, brute_force_fas, brute_force_fasd, random_orgraph_with_arcs, random_small_orgraph};
use fasd::fas::{fas_exact, fas_upper_heuristic, fas_weighted_exact, HeuristicOptions};
use fasd::fasd::{fasd_exact, verify_good_coloring, FasdValue, DEFAULT_BUDGET};
use fasd::generators::random_weights;
use fasd::ordering::backward_weight;
use fasd::Digraph;
use proptest::prelude::*;

#[test]
fn fas_exact_matches_factorial_enumeration() {
    for seed in 0..200u64 {
        let n = 2 + seed as usize % 7;
        let d = random_small_orgraph(n, 0.3 + 0.1 * (seed % 6) as f64, seed);
        let cert = fas_exact(&d).unwrap();
        assert_eq!(cert.value, brute_force_fas(&d), "seed {seed}");
        assert!(acyclic_without(&d, &cert.arcs));
    }
}

#[test]
fn weighted_fas_matches_factorial_enumeration() {
    for seed in 0..60u64 {
        let n = 3 + seed as usize % 5;
        let d = random_small_orgraph(n, 0.6, seed);
        let d = Digraph::with_weights(n, d.arcs().to_vec(), random_weights(d.arc_count(), seed)).unwrap();
        let cert = fas_weighted_exact(&d).unwrap();
        assert!((cert.value - brute_force_fas(&d)).abs() < 1e-9, "seed {seed}");
        assert!(acyclic_without(&d, &cert.arcs));
    }
}

/// Orgraphs with at most 10 arcs: directed cycles, then random graphs,
/// at most a tenth of them acyclic.
fn small_arc_corpus(count: usize) -> Vec<Digraph> {
    let mut out: Vec<Digraph> = (3..=7).map(|n| fasd::generators::directed_cycle(n).unwrap()).collect();
    let mut acyclic = 0;
    let mut seed = 0u64;
    while out.len() < count {
        let d = random_orgraph_with_arcs(3 + seed as usize % 6, 3 + seed as usize % 8, seed);
        seed += 1;
        if d.is_acyclic() {
            if acyclic * 10 >= count {
                continue;
            }
            acyclic += 1;
        }
        out.push(d);
    }
    out
}

#[test]
fn fasd_exact_matches_coloring_enumeration() {
    let mut values = std::collections::BTreeSet::new();
    for d in small_arc_corpus(100) {
        assert!(d.arc_count() <= 10);
        let cert = fasd_exact(&d, DEFAULT_BUDGET).unwrap();
        let oracle = brute_force_fasd(&d);
        values.insert(oracle);
        match oracle {
            None => assert_eq!(cert.value, FasdValue::Infinite),
            Some(t) => {
                assert_eq!(cert.value, FasdValue::Exact(t), "{:?}", d.arcs());
                verify_good_coloring(&d, cert.witness.as_ref().unwrap()).unwrap();
            }
        }
    }
    assert!(values.len() >= 4, "{values:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heuristic_never_beats_exact(n in 2usize..12, p in 0.2f64..0.9, seed in any::<u64>()) {
        let d = random_small_orgraph(n, p, seed);
        let exact = fas_exact(&d).unwrap().value;
        let order = fas_upper_heuristic(&d, HeuristicOptions { seed, ..Default::default() });
        prop_assert!(backward_weight(&d, &order).unwrap() >= exact);
    }

    #[test]
    fn exact_ordering_realises_value(n in 1usize..14, p in 0.1f64..0.9, seed in any::<u64>()) {
        let d = random_small_orgraph(n, p, seed);
        let cert = fas_exact(&d).unwrap();
        prop_assert_eq!(backward_weight(&d, &cert.ordering).unwrap(), cert.value);
        prop_assert_eq!(cert.arcs.len() as f64, cert.value);
    }
}

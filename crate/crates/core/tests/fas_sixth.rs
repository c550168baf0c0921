mod common;

use common::acyclic_without;
use fasd::fas::fas_exact;
use fasd::fas_sixth::{fas_sixth, SixthStep};
use fasd::fvs::{fvs_exact, is_feedback_vertex_set, odd_digon_cycle, split_odd_digon_cycle};
use fasd::generators::{directed_cycle, gadget_co, gadget_co_prime, random_orgraph, random_split_orgraph};
use fasd::{Digraph, Error, MultiDigraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

const BUDGET: u64 = 10_000_000;

/// Smallest `k` such that some `k`-subset leaves the graph acyclic.
fn brute_force_fvs(d: &Digraph) -> usize {
    let n = d.n();
    (0..=n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
                let keep: Vec<bool> = (0..n).map(|v| m & (1 << v) == 0).collect();
                d.induced(&keep).0.is_acyclic()
            })
        })
        .unwrap()
}

/// Random weakly connected digraph with maximum degree 4; digons allowed.
fn random_degree_four(n: usize, seed: u64) -> Option<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for _ in 0..4 * n {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && deg[u] < 4 && deg[v] < 4 && !arcs.contains(&(u, v)) {
            arcs.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let d = Digraph::new(n, arcs).unwrap();
    (fasd::graph::weak_components(&d).len() == 1).then_some(d)
}

#[test]
fn fvs_small_families() {
    assert_eq!(fvs_exact(&directed_cycle(7).unwrap(), BUDGET).unwrap().vertices.len(), 1);
    for l in [3, 5, 7, 9] {
        let co = gadget_co(l).unwrap();
        let cert = fvs_exact(&co, BUDGET).unwrap();
        assert_eq!(cert.vertices.len(), l.div_ceil(2));
        assert!(cert.odd_digon_cycle);
        assert!(odd_digon_cycle(&co).is_some());
        let split = gadget_co_prime(l).unwrap();
        assert_eq!(split_odd_digon_cycle(&split).unwrap().len(), l);
        assert!(split_odd_digon_cycle(&co).is_none());
    }
    assert!(odd_digon_cycle(&directed_cycle(5).unwrap()).is_none());
    let even = Digraph::new(4, (0..4).flat_map(|i| [(i, (i + 1) % 4), ((i + 1) % 4, i)]).collect()).unwrap();
    assert!(odd_digon_cycle(&even).is_none());
    assert_eq!(fvs_exact(&even, BUDGET).unwrap().vertices.len(), 2);
}

#[test]
fn fvs_on_multigraphs() {
    let m = MultiDigraph::new(3, vec![(0, 1), (0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
    let cert = fvs_exact(&m, BUDGET).unwrap();
    assert_eq!(cert.vertices, vec![1]);
    assert!(is_feedback_vertex_set(&m, &cert.vertices));
    assert!(MultiDigraph::new(2, vec![(0, 0)]).is_err());
}

#[test]
fn fvs_matches_subset_enumeration() {
    let mut checked = 0;
    for seed in 0..400u64 {
        let n = 3 + seed as usize % 12;
        let Some(d) = random_degree_four(n, seed) else { continue };
        let cert = fvs_exact(&d, BUDGET).unwrap();
        assert!(is_feedback_vertex_set(&d, &cert.vertices));
        assert_eq!(cert.vertices.len(), brute_force_fvs(&d), "seed {seed}: {:?}", d.arcs());
        assert!(cert.within_half || cert.odd_digon_cycle, "seed {seed}: {:?}", d.arcs());
        checked += 1;
    }
    assert!(checked >= 200, "{checked}");
}

#[test]
fn cycles_need_one_arc_per_six() {
    let r = fas_sixth(&directed_cycle(6).unwrap()).unwrap();
    assert_eq!(r.arcs.len(), 1);
    let c12 = directed_cycle(12).unwrap();
    let r = fas_sixth(&c12).unwrap();
    assert!(r.arcs.len() <= 2);
    assert!(acyclic_without(&c12, &r.arcs));
    assert_eq!(fas_exact(&directed_cycle(6).unwrap()).unwrap().value, 1.0);
}

#[test]
fn rejects_short_girth_and_high_degree() {
    assert!(matches!(fas_sixth(&directed_cycle(5).unwrap()), Err(Error::Precondition(_))));
    let star = Digraph::new(5, (1..5).map(|v| (0, v)).collect()).unwrap();
    assert!(matches!(fas_sixth(&star), Err(Error::Precondition(_))));
}

#[test]
fn random_instances_meet_the_sixth_bound() {
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    let mut compared = 0;
    for seed in 0..400u64 {
        let n = 6 + seed as usize % 50;
        let d = if seed % 2 == 0 {
            random_orgraph(n, 3, 6, seed)
        } else {
            let Ok(d) = random_split_orgraph(3 + seed as usize % 20, seed) else { continue };
            d
        };
        let r = fas_sixth(&d).unwrap_or_else(|e| panic!("seed {seed}: {e} on {:?}", d.arcs()));
        assert!(acyclic_without(&d, &r.arcs));
        assert!(6 * r.arcs.len() <= d.arc_count());
        if d.n() <= 20 {
            assert!(r.arcs.len() as f64 >= fas_exact(&d).unwrap().value);
            compared += 1;
        }
        for s in r.steps {
            let key = format!("{s:?}");
            *kinds.entry(key.split([' ', '{']).next().unwrap().to_string()).or_default() += 1;
        }
    }
    eprintln!("{kinds:?}");
    assert!(compared >= 50);
    assert!(kinds.contains_key("Contracted"), "{kinds:?}");
}

#[test]
fn split_odd_digon_cycle_subdivided() {
    // subdividing each non-matching arc of the split 5-cycle twice gives girth 6
    let split = gadget_co_prime(5).unwrap();
    let mut arcs = Vec::new();
    let mut n = split.n();
    for &(u, v) in split.arcs() {
        if u % 2 == 0 {
            arcs.push((u, v));
        } else {
            arcs.extend([(u, n), (n, n + 1), (n + 1, v)]);
            n += 2;
        }
    }
    let d = Digraph::new(n, arcs).unwrap();
    assert!(d.girth().finite().unwrap() >= 6);
    let r = fas_sixth(&d).unwrap();
    assert!(r.steps.contains(&SixthStep::Contracted { vertices: 5, fvs: 3, odd_digon_cycle: true }), "{:?}", r.steps);
    assert_eq!(r.arcs.len(), 3);
    assert!(6 * 3 <= d.arc_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sixth_bound_holds(n in 1usize..60, seed in any::<u64>(), split in any::<bool>()) {
        let d = match split {
            true => random_split_orgraph(3 + n % 25, seed).unwrap_or_else(|_| random_orgraph(n, 3, 6, seed)),
            false => random_orgraph(n, 3, 6, seed),
        };
        let r = fas_sixth(&d).unwrap();
        prop_assert!(acyclic_without(&d, &r.arcs));
        prop_assert!(6 * r.arcs.len() <= d.arc_count());
    }
}

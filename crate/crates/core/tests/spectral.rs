use fasd::fas::fas_exact;
use fasd::generators::{circulant_graph, paley_graph, random_two_regular_orgraph};
use fasd::spectral::{
    lambda_extremes, level_statistic, mixing_check, orientation_fas_lower_bound, random_orientation_experiment,
    DEFAULT_TOL,
};
use fasd::{Digraph, UndirectedGraph};
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues from a dense symmetric decomposition, sorted ascending.
fn dense_spectrum(g: &UndirectedGraph) -> Vec<f64> {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// `(λ, λ')` from the dense spectrum.
fn dense_lambdas(g: &UndirectedGraph) -> (f64, f64) {
    let ev = dense_spectrum(g);
    let d = g.regular_degree().unwrap() as f64;
    let lambda = ev[..ev.len() - 1].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let lambda_prime = ev.iter().map(|x| x.abs()).filter(|x| (x - d).abs() > 1e-6).fold(0.0, f64::max);
    (lambda, lambda_prime)
}

fn underlying(d: &Digraph) -> UndirectedGraph {
    UndirectedGraph::new(d.n(), d.arcs().to_vec()).unwrap()
}

#[test]
fn complete_graph_and_cycles() {
    let k4 = UndirectedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let r = lambda_extremes(&k4, DEFAULT_TOL).unwrap();
    assert!((r.lambda - 1.0).abs() < 1e-9);
    for n in 3..20 {
        let c = circulant_graph(n, &[1]).unwrap();
        let r = lambda_extremes(&c, DEFAULT_TOL).unwrap();
        let second = 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
        assert!((r.inner_max - second).abs() < 1e-9, "n={n}: {} vs {second}", r.inner_max);
        assert_eq!(r.bipartite, n % 2 == 0);
        if n % 2 == 0 {
            assert_eq!(r.lambda, 2.0);
        }
    }
}

#[test]
fn paley_closed_form() {
    for q in [5usize, 13, 17, 29, 37, 41] {
        let g = paley_graph(q).unwrap();
        let r = lambda_extremes(&g, DEFAULT_TOL).unwrap();
        let expected = (1.0 + (q as f64).sqrt()) / 2.0;
        assert!((r.lambda - expected).abs() < 1e-6, "q={q}");
        assert!((r.inner_min + expected).abs() < 1e-6);
        assert!((r.inner_max - (expected - 1.0)).abs() < 1e-6);
        assert!(r.residual < 1e-8);
    }
}

#[test]
fn agrees_with_dense_decomposition() {
    let mut graphs: Vec<UndirectedGraph> = Vec::new();
    for n in [10, 16, 23, 30, 41, 50] {
        for s in [vec![1, 3], vec![2, 5], vec![1, 2, 4]] {
            if let Ok(g) = circulant_graph(n, &s) {
                graphs.push(g);
            }
        }
    }
    for seed in 0..40u64 {
        let n = 6 + seed as usize % 45;
        if let Ok(d) = random_two_regular_orgraph(n, false, seed) {
            graphs.push(underlying(&d));
        }
    }
    // two disjoint copies of Paley(13)
    let p = paley_graph(13).unwrap();
    let mut edges = p.edges().to_vec();
    edges.extend(p.edges().iter().map(|&(u, v)| (u + 13, v + 13)));
    graphs.push(UndirectedGraph::new(26, edges).unwrap());
    assert!(graphs.len() >= 50);
    for g in &graphs {
        if g.regular_degree().is_none() {
            continue;
        }
        let r = lambda_extremes(g, DEFAULT_TOL).unwrap();
        let (lambda, lambda_prime) = dense_lambdas(g);
        assert!((r.lambda - lambda).abs() < 1e-6, "{} vs {lambda} on n={}", r.lambda, g.n());
        assert!((r.lambda_prime - lambda_prime).abs() < 1e-6);
    }
}

#[test]
fn mixing_never_violated_on_paley() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [13usize, 17] {
        let g = paley_graph(q).unwrap();
        let n = g.n();
        let lambda = lambda_extremes(&g, DEFAULT_TOL).unwrap().lambda;
        let all: Vec<usize> = (0..n).collect();
        let full = mixing_check(&g, &all, &all, lambda).unwrap();
        assert_eq!(full.edges, n * (n - 1) / 2);
        assert!(full.deviation < 1e-9);
        let empty = mixing_check(&g, &[], &[], lambda).unwrap();
        assert_eq!((empty.edges, empty.bound), (0, 0.0));
        for _ in 0..10_000 {
            let pick = |rng: &mut ChaCha8Rng| {
                let mut v = all.clone();
                v.shuffle(rng);
                v.truncate(rng.gen_range(0..=n));
                v
            };
            let (s, t) = (pick(&mut rng), pick(&mut rng));
            assert!(mixing_check(&g, &s, &t, lambda).unwrap().holds);
        }
    }
}

#[test]
fn mixing_counts_ordered_pairs() {
    let k4 = UndirectedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(mixing_check(&k4, &[0, 1], &[0, 1], 1.0).unwrap().edges, 2);
    assert_eq!(mixing_check(&k4, &[0, 1], &[2, 3], 1.0).unwrap().edges, 4);
    let halves = mixing_check(&k4, &[0, 1], &[2, 3], 1.0).unwrap();
    assert_eq!(halves.halves_lower, Some(2.0));
    assert!(mixing_check(&k4, &[0, 0], &[1], 1.0).is_err());
}

#[test]
fn orientation_bound_requirements() {
    let p13 = paley_graph(13).unwrap().eulerian_orient().unwrap();
    assert!(orientation_fas_lower_bound(&p13, 2.3).is_err());
    let c4 = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let measured = lambda_extremes(&underlying(&c4), DEFAULT_TOL).unwrap().lambda;
    assert_eq!(orientation_fas_lower_bound(&c4, measured).unwrap().guaranteed, 0);
    let b = orientation_fas_lower_bound(&c4, 0.0).unwrap();
    assert_eq!(b.guaranteed, 1);
    assert_eq!(fas_exact(&c4).unwrap().value, 1.0);
    let not_eulerian = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    assert!(orientation_fas_lower_bound(&not_eulerian, 0.0).is_err());
}

#[test]
fn orientation_bound_below_exact_fas() {
    for (n, s) in [(18, (1..=8).collect::<Vec<_>>()), (16, vec![1, 2, 3]), (14, vec![1, 2, 4]), (12, vec![1, 3, 4])] {
        let g = circulant_graph(n, &s).unwrap();
        let lambda = lambda_extremes(&g, DEFAULT_TOL).unwrap().lambda;
        let d = g.eulerian_orient().unwrap();
        let bound = orientation_fas_lower_bound(&d, lambda).unwrap();
        let fas = fas_exact(&d).unwrap().value as usize;
        assert!(fas >= bound.guaranteed, "n={n}: fas {fas} < {}", bound.guaranteed);
    }
}

#[test]
fn orientation_experiment_statistics() {
    let g = circulant_graph(16, &[1, 2, 5]).unwrap();
    let r = random_orientation_experiment(&g, 40, 20, 3).unwrap();
    assert_eq!(r.samples.len(), 40 * 20 * 3);
    assert!(r.min_level_sum <= r.min_backward);
    assert_eq!(r.below_threshold, 0);
    // level-1 crossing arcs point backward with probability 1/2
    let level1: Vec<f64> = r.samples.iter().filter(|s| s.level == 1).map(|s| s.backward as f64 / s.cross_edges as f64).collect();
    let mean = level1.iter().sum::<f64>() / level1.len() as f64;
    let cross = r.samples.iter().filter(|s| s.level == 1).map(|s| s.cross_edges).min().unwrap() as f64;
    let sigma = (0.25 / cross).sqrt() / (level1.len() as f64).sqrt();
    assert!((mean - 0.5).abs() < 3.0 * sigma.max(0.01), "{mean}");
    assert!((r.level1_ratio - mean).abs() < 1e-12);
    let again = random_orientation_experiment(&g, 40, 20, 3).unwrap();
    assert_eq!(r, again);
    assert!(random_orientation_experiment(&circulant_graph(12, &[1]).unwrap(), 1, 1, 0).is_err());
}

#[test]
fn level_statistic_is_reversal_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = circulant_graph(24, &[1, 4, 7]).unwrap();
    for _ in 0..50 {
        let arcs: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
        let d = Digraph::new(24, arcs).unwrap();
        let mut order: Vec<usize> = (0..24).collect();
        order.shuffle(&mut rng);
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        assert_eq!(level_statistic(&d, &order).unwrap(), level_statistic(&d.converse(), &rev).unwrap());
    }
}

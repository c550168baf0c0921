use fasd::decompose3::{decompose3, insert_no_backward, ComponentCase, RemovalCase};
use fasd::generators::{circulant_graph, random_orgraph, random_two_regular_orgraph, rotational_tournament};
use fasd::ordering::{backward_arcs, verify_good_triple};
use fasd::{Digraph, Error};
use proptest::prelude::*;
use std::collections::HashSet;

fn check(d: &Digraph) -> Vec<ComponentCase> {
    let dec = decompose3(d).unwrap_or_else(|e| panic!("decompose3 failed: {e} on {:?}", d.arcs()));
    verify_good_triple(d, &dec.triple).unwrap();
    let mut seen = vec![0usize; d.arc_count()];
    for (i, class) in dec.classes.iter().enumerate() {
        assert_eq!(class, &backward_arcs(d, &dec.triple.0[i]).unwrap());
        let (rest, _) = d.filter_arcs(|a| !class.contains(&a));
        assert!(rest.is_acyclic(), "class {i} is not a feedback arc set");
        for &a in class {
            seen[a] += 1;
        }
    }
    assert!(seen.iter().all(|&c| c == 1));
    dec.cases
}

#[test]
fn rejects_digons_and_high_degree() {
    let digon = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
    assert!(matches!(decompose3(&digon), Err(Error::Precondition(_))));
    let star = Digraph::new(6, (1..6).map(|v| (0, v)).collect()).unwrap();
    assert!(matches!(decompose3(&star), Err(Error::Precondition(_))));
}

#[test]
fn small_fixed_graphs() {
    check(&Digraph::new(0, vec![]).unwrap());
    check(&Digraph::new(3, vec![]).unwrap());
    check(&Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap());
    let cases = check(&rotational_tournament(5).unwrap());
    assert_eq!(cases, vec![ComponentCase::TransitiveTriangle]);
}

#[test]
fn oriented_circulants_cover_removal_branches() {
    let mut branches = HashSet::new();
    for n in 5..40 {
        for j in 2..n / 2 {
            let g = circulant_graph(n, &[1, j]).unwrap();
            if g.regular_degree() != Some(4) {
                continue;
            }
            let d = g.eulerian_orient().unwrap();
            for case in check(&d) {
                branches.insert(case);
            }
        }
    }
    assert!(branches.len() >= 2, "{branches:?}");
}

#[test]
fn triangle_free_two_regular_graphs() {
    let mut branches = HashSet::new();
    for seed in 0..300 {
        let n = 8 + (seed as usize % 30);
        let Ok(d) = random_two_regular_orgraph(n, true, seed) else { continue };
        for case in check(&d) {
            if let ComponentCase::VertexRemoval(r) = case {
                branches.insert(r);
            }
        }
    }
    for r in [
        RemovalCase::Maximal,
        RemovalCase::ReachedIn,
        RemovalCase::ReachedOutForward,
        RemovalCase::ReachedOutDeadEnd,
        RemovalCase::SecondPathMaximal,
        RemovalCase::SecondPathReached,
    ] {
        assert!(branches.contains(&r), "branch {r:?} never taken: {branches:?}");
    }
}

#[test]
fn insertion_respects_neighbours() {
    let d = Digraph::new(4, vec![(0, 3), (3, 1), (2, 3)]).unwrap();
    assert_eq!(insert_no_backward(&d, &[0, 2, 1], 3).unwrap(), vec![0, 2, 3, 1]);
    assert!(insert_no_backward(&d, &[1, 0, 2], 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_degree_four_orgraphs(n in 1usize..40, seed in any::<u64>(), girth in 3usize..6) {
        let d = random_orgraph(n, 4, girth, seed);
        check(&d);
    }

    #[test]
    fn random_two_regular(n in 5usize..60, seed in any::<u64>(), tf in any::<bool>()) {
        if let Ok(d) = random_two_regular_orgraph(n, tf, seed) {
            check(&d);
        }
    }

    #[test]
    fn sparse_random_orgraphs(n in 1usize..30, seed in any::<u64>(), m in 0usize..40) {
        let d = fasd::generators::RandomOrgraph { n, max_degree: 4, min_girth: 3, max_arcs: Some(m) }.generate(seed);
        check(&d);
    }
}

use fasd::fas::fas_exact;
use fasd::fasd::{
    fasd_exact, good_coloring_search, refute_by_conflict_clique, verify_counting_bound, verify_good_coloring, FasdValue,
    SearchOutcome, DEFAULT_BUDGET,
};
use fasd::generators::{gadget_dg, gadget_h3, gadget_h4, gadget_h5, split_k};
use fasd::Girth;
use std::time::Instant;

#[test]
fn dg8_has_fas_two_and_fifteen_arcs() {
    let d = gadget_dg(8).unwrap();
    assert_eq!(d.arc_count(), 15);
    assert_eq!(d.girth(), Girth::Finite(8));
    assert_eq!(fas_exact(&d).unwrap().value, 2.0);
}

#[test]
fn h5_has_no_good_four_coloring() {
    let h = gadget_h5();
    assert_eq!(h.max_degree(), 5);
    assert_eq!(h.girth(), Girth::Finite(4));
    assert_eq!(good_coloring_search(&h, 4, DEFAULT_BUDGET).unwrap().outcome, SearchOutcome::Unsat);
    let clique = refute_by_conflict_clique(&h, 4).unwrap();
    assert!(clique.verify(&h));
    assert_eq!(clique.arcs, vec![0, 1, 2, 3, 4]);
}

#[test]
fn split_gadgets_refuted_by_split_arcs() {
    for (h, t, split_arcs) in [(gadget_h4(), 6, 7), (gadget_h3(), 9, 5 * 2)] {
        assert_eq!(h.girth(), Girth::Finite(t));
        let clique = refute_by_conflict_clique(&h, t).unwrap();
        assert!(clique.verify(&h));
        assert_eq!(clique.arcs.len(), t + 1);
        assert!(clique.arcs.iter().all(|&a| a < split_arcs), "{:?}", clique.arcs);
    }
    assert_eq!(gadget_h4().max_degree(), 4);
    assert_eq!(gadget_h3().max_degree(), 3);
}

#[test]
fn split_multiplies_girth() {
    let t = fasd::generators::rotational_tournament(5).unwrap();
    for k in 1..4 {
        assert_eq!(split_k(&t, k).unwrap().girth(), Girth::Finite(3 * k));
    }
}

#[test]
fn counting_bound_over_even_girths() {
    for g in (4..=16).step_by(2) {
        let d = gadget_dg(g).unwrap();
        let b = verify_counting_bound(&d, g).unwrap();
        assert_eq!(b.bound, g - (g - 4) / 4);
        assert_eq!(d.arc_count(), 3 * (g / 2 - 1) + 6);
    }
}

#[test]
fn dg8_fasd_is_at_most_seven() {
    let d = gadget_dg(8).unwrap();
    let start = Instant::now();
    assert_eq!(good_coloring_search(&d, 8, DEFAULT_BUDGET).unwrap().outcome, SearchOutcome::Unsat);
    let cert = fasd_exact(&d, DEFAULT_BUDGET).unwrap();
    assert!(start.elapsed().as_secs() < 300);
    let FasdValue::Exact(v) = cert.value else { panic!("{:?}", cert.value) };
    assert!(v <= 7);
    verify_good_coloring(&d, cert.witness.as_ref().unwrap()).unwrap();
}

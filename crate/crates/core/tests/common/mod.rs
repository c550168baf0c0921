//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use fasd::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum backward weight over all `n!` orderings (Heap's algorithm).
pub fn brute_force_fas(d: &Digraph) -> f64 {
    let n = d.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let eval = |perm: &[usize]| -> f64 {
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        (0..d.arc_count()).filter(|&a| pos[d.arc(a).0] > pos[d.arc(a).1]).map(|a| d.weight(a)).sum()
    };
    let mut best = eval(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(eval(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Arc masks of all simple directed cycles, by depth-first search over
/// simple paths that start at their smallest vertex.
pub fn cycle_masks(d: &Digraph) -> Vec<u64> {
    assert!(d.arc_count() <= 64);
    let mut out = Vec::new();
    fn walk(d: &Digraph, start: usize, v: usize, on: &mut Vec<bool>, mask: u64, out: &mut Vec<u64>) {
        for &a in d.out_arcs(v) {
            let w = d.arc(a).1;
            if w == start {
                out.push(mask | 1 << a);
            } else if w > start && !on[w] {
                on[w] = true;
                walk(d, start, w, on, mask | 1 << a, out);
                on[w] = false;
            }
        }
    }
    for s in 0..d.n() {
        let mut on = vec![false; d.n()];
        on[s] = true;
        walk(d, s, s, &mut on, 0, &mut out);
    }
    out
}

/// Largest `t` for which one of the `t^m` colorings meets every color on
/// every cycle; `None` for acyclic graphs.
pub fn brute_force_fasd(d: &Digraph) -> Option<usize> {
    let cycles = cycle_masks(d);
    let girth = cycles.iter().map(|c| c.count_ones() as usize).min()?;
    let m = d.arc_count();
    for t in (1..=girth).rev() {
        let mut colors = vec![0usize; m];
        loop {
            let mut class = vec![0u64; t];
            for (a, &c) in colors.iter().enumerate() {
                class[c] |= 1 << a;
            }
            if cycles.iter().all(|&cy| class.iter().all(|&k| k & cy != 0)) {
                return Some(t);
            }
            let mut i = 0;
            while i < m && colors[i] == t - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("one color is always good")
}

/// Random orgraph on `n` vertices: each unordered pair becomes an arc
/// with probability `p`, in a random direction.
pub fn random_small_orgraph(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::new(n, arcs).unwrap()
}

/// Random orgraph with exactly `min(m, n(n-1)/2)` arcs.
pub fn random_orgraph_with_arcs(n: usize, m: usize, seed: u64) -> Digraph {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    let arcs = pairs.into_iter().map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
    Digraph::new(n, arcs).unwrap()
}

/// Acyclicity by repeated sink removal, independent of the library.
pub fn acyclic_without(d: &Digraph, removed: &[usize]) -> bool {
    let mut gone = vec![false; d.arc_count()];
    for &a in removed {
        gone[a] = true;
    }
    let mut alive = vec![true; d.n()];
    loop {
        let sink = (0..d.n()).find(|&v| alive[v] && d.out_arcs(v).iter().all(|&a| gone[a] || !alive[d.arc(a).1]));
        match sink {
            Some(v) => alive[v] = false,
            None => return alive.iter().all(|&x| !x),
        }
    }
}

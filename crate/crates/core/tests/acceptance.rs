//! Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on
//! any failure. Every verdict is recomputed with the brute-force helpers in
//! `common` rather than the library's own verifiers where that is feasible.

mod common;

use std::time::Instant;

use common::{acyclic_without, brute_force_fas, brute_force_fasd, cycle_masks, random_orgraph_with_arcs, random_small_orgraph};
use fasd::decompose3::decompose3;
use fasd::delta3::good_g_coloring;
use fasd::fas::{fas_exact, fas_weighted_exact};
use fasd::fas_sixth::fas_sixth;
use fasd::fasd::{fasd_exact, good_coloring_search, refute_by_conflict_clique, verify_counting_bound, FasdValue, SearchOutcome, DEFAULT_BUDGET};
use fasd::generators::{
    circulant_graph, directed_cycle, gadget_dg, gadget_h3, gadget_h4, gadget_h5, paley_graph, random_orgraph, random_split_orgraph,
    random_two_regular_orgraph, random_weights, RandomOrgraph,
};
use fasd::harness::{verify_paper, HarnessOptions};
use fasd::spectral::{lambda_extremes, DEFAULT_TOL};
use fasd::{Digraph, UndirectedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Positions of each vertex in `order`.
fn positions(n: usize, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Every color class is hit by every cycle, checked by removing each class.
fn good_coloring(d: &Digraph, colors: &[usize], t: usize) -> bool {
    colors.len() == d.arc_count()
        && colors.iter().all(|&c| c < t)
        && (0..t).all(|c| acyclic_without(d, &(0..d.arc_count()).filter(|&a| colors[a] == c).collect::<Vec<_>>()))
}

/// `arcs` pairwise lie on a common cycle of exactly `t` arcs.
fn pairwise_on_tight_cycles(d: &Digraph, arcs: &[usize], t: usize) -> bool {
    let tight: Vec<u64> = cycle_masks(d).into_iter().filter(|c| c.count_ones() as usize == t).collect();
    arcs.iter().enumerate().all(|(i, &a)| arcs[i + 1..].iter().all(|&b| tight.iter().any(|c| c & (1 << a) != 0 && c & (1 << b) != 0)))
}

fn degree_four_instance(i: usize, max_n: usize) -> Digraph {
    let n = 1 + i % max_n;
    let seed = 7_000 + i as u64;
    match i % 3 {
        0 => random_orgraph(n, 4, 3, seed),
        1 => RandomOrgraph { n, max_degree: 4, min_girth: 3, max_arcs: Some(n + i % (n + 1)) }.generate(seed),
        _ => random_two_regular_orgraph(n.max(5), i.is_multiple_of(2), seed).unwrap_or_else(|_| random_orgraph(n, 4, 3, seed)),
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let d = gadget_dg(8).map_err(|e| e.to_string())?;
    let cert = fas_exact(&d).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(d.arc_count() == 15, || format!("a = {}", d.arc_count()))?;
    ensure(cert.size() == 2 && acyclic_without(&d, &cert.arcs), || format!("fas = {}", cert.size()))?;
    // no single arc meets every cycle
    let cycles = cycle_masks(&d);
    ensure((0..15).all(|a| cycles.iter().any(|c| c & (1 << a) == 0)), || "a single arc is a feedback arc set".into())?;
    ensure(secs < 1.0, || format!("{secs:.2}s"))?;
    Ok(format!("fas(D8) = 2, a = 15, {secs:.3}s"))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let h = gadget_h5();
    let search = good_coloring_search(&h, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let clique = refute_by_conflict_clique(&h, 4).ok_or("no conflict clique")?;
    let secs = start.elapsed().as_secs_f64();
    ensure(search.outcome == SearchOutcome::Unsat, || format!("{:?}", search.outcome))?;
    ensure(clique.arcs.len() == 5 && clique.arcs.iter().all(|&a| h.arc(a).1 == h.arc(a).0 + 5), || format!("clique {:?}", clique.arcs))?;
    ensure(pairwise_on_tight_cycles(&h, &clique.arcs, 4), || "clique pair without a common 4-cycle".into())?;
    ensure(secs < 10.0, || format!("{secs:.2}s"))?;
    Ok(format!("H5 t=4 UNSAT after {} nodes, 5-arc matching clique, {secs:.3}s", search.nodes))
}

fn criterion_3() -> Verdict {
    let mut parts = Vec::new();
    for (name, h, t, split_arcs) in [("H4", gadget_h4(), 6, 7), ("H3", gadget_h3(), 9, 10)] {
        let start = Instant::now();
        let clique = refute_by_conflict_clique(&h, t).ok_or(format!("{name}: no conflict clique"))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(clique.arcs.len() == split_arcs && clique.arcs.iter().all(|&a| a < split_arcs), || format!("{name}: clique {:?}", clique.arcs))?;
        ensure(pairwise_on_tight_cycles(&h, &clique.arcs, t), || format!("{name}: pair without a common {t}-cycle"))?;
        ensure(cycle_masks(&h).iter().all(|c| c.count_ones() as usize >= t), || format!("{name}: girth below {t}"))?;
        ensure(secs < 60.0, || format!("{name}: {secs:.2}s"))?;
        parts.push(format!("{name} t={t} clique of {split_arcs} split arcs ({secs:.3}s)"));
    }
    Ok(parts.join(", "))
}

fn criterion_4() -> Verdict {
    const COUNT: usize = 500;
    for i in 0..COUNT {
        let d = degree_four_instance(i, 60);
        let dec = decompose3(&d).map_err(|e| format!("instance {i}: {e}"))?;
        let pos: Vec<Vec<usize>> = dec.triple.orders().iter().map(|o| positions(d.n(), o)).collect();
        for (a, &(u, v)) in d.arcs().iter().enumerate() {
            let backward = pos.iter().filter(|p| p[u] > p[v]).count();
            ensure(backward == 1, || format!("instance {i}: arc {a} backward in {backward} orderings"))?;
        }
        for class in &dec.classes {
            ensure(acyclic_without(&d, class), || format!("instance {i}: a class is not a feedback arc set"))?;
        }
    }
    Ok(format!("{COUNT}/{COUNT} GOOD triples"))
}

fn criterion_5() -> Verdict {
    const COUNT: usize = 200;
    for i in 0..COUNT {
        let d = degree_four_instance(1_000 + i, 16);
        let d = Digraph::with_weights(d.n(), d.arcs().to_vec(), random_weights(d.arc_count(), i as u64)).map_err(|e| e.to_string())?;
        let w: f64 = (0..d.arc_count()).map(|a| d.weight(a)).sum();
        let dec = decompose3(&d).map_err(|e| format!("instance {i}: {e}"))?;
        let min_class = dec.classes.iter().map(|c| c.iter().map(|&a| d.weight(a)).sum::<f64>()).fold(f64::INFINITY, f64::min);
        ensure(min_class <= w / 3.0 + 1e-9, || format!("instance {i}: class {min_class} > {w}/3"))?;
        let exact = fas_weighted_exact(&d).map_err(|e| e.to_string())?;
        ensure(exact.value <= w / 3.0 + 1e-9, || format!("instance {i}: fas_w {} > {w}/3", exact.value))?;
    }
    Ok(format!("{COUNT} weighted instances, 0 violations"))
}

fn criterion_6() -> Verdict {
    const PER_GIRTH: usize = 300;
    for g in 3..=5 {
        for i in 0..PER_GIRTH {
            let d = random_orgraph(3 + i % 50, 3, g, 9_000 * g as u64 + i as u64);
            let run = good_g_coloring(&d, g).map_err(|e| format!("g={g} instance {i}: {e}"))?;
            ensure(good_coloring(&d, &run.coloring.colors, g), || format!("g={g} instance {i}: coloring not good"))?;
        }
        let c = directed_cycle(g).map_err(|e| e.to_string())?;
        let v = fasd_exact(&c, DEFAULT_BUDGET).map_err(|e| e.to_string())?.value;
        ensure(v == FasdValue::Exact(g), || format!("fasd(C{g}) = {v:?}"))?;
    }
    Ok(format!("{PER_GIRTH} instances per g in 3..=5 verified, fasd(C_g) = g"))
}

fn criterion_7() -> Verdict {
    const COUNT: usize = 200;
    let mut compared = 0;
    for i in 0..COUNT {
        let seed = 11_000 + i as u64;
        let d = match i % 2 {
            0 => random_orgraph(6 + i % 50, 3, 6, seed),
            _ => random_split_orgraph(5 + i % 16, seed).unwrap_or_else(|_| random_orgraph(6 + i % 50, 3, 6, seed)),
        };
        let r = fas_sixth(&d).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(6 * r.arcs.len() <= d.arc_count(), || format!("instance {i}: 6*{} > {}", r.arcs.len(), d.arc_count()))?;
        ensure(acyclic_without(&d, &r.arcs), || format!("instance {i}: not a feedback arc set"))?;
        if d.n() <= 20 {
            compared += 1;
            let exact = fas_exact(&d).map_err(|e| e.to_string())?;
            ensure(exact.size() <= r.arcs.len(), || format!("instance {i}: below the optimum"))?;
        }
    }
    let c6 = directed_cycle(6).map_err(|e| e.to_string())?;
    ensure(fas_exact(&c6).map_err(|e| e.to_string())?.size() == 1 && c6.arc_count() == 6, || "fas(C6) != 1".into())?;
    Ok(format!("{COUNT} instances within a/6 ({compared} compared with the optimum), fas(C6) = 1 = a/6"))
}

fn criterion_8() -> Verdict {
    for g in (4..=16).step_by(2) {
        let d = gadget_dg(g).map_err(|e| e.to_string())?;
        let b = verify_counting_bound(&d, g).map_err(|e| e.to_string())?;
        let expected = (g as f64 - (g as f64 / 4.0 - 1.0).floor()) as usize;
        ensure(b.bound == expected, || format!("g={g}: bound {} vs {expected}", b.bound))?;
    }
    let start = Instant::now();
    let d8 = gadget_dg(8).map_err(|e| e.to_string())?;
    let cert = fasd_exact(&d8, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let FasdValue::Exact(v) = cert.value else { return Err(format!("fasd(D8) = {:?}", cert.value)) };
    let w = cert.witness.ok_or("no witness")?;
    ensure(v <= 7 && good_coloring(&d8, &w.colors, v), || format!("fasd(D8) = {v}"))?;
    ensure(secs < 300.0, || format!("{secs:.1}s"))?;
    Ok(format!("counting bound g - floor(g/4 - 1) for g = 4..16, fasd(D8) = {v} in {secs:.2}s"))
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut parts = Vec::new();
    for q in [13usize, 17] {
        let g = paley_graph(q).map_err(|e| e.to_string())?;
        let eig = lambda_extremes(&g, DEFAULT_TOL).map_err(|e| e.to_string())?;
        let closed = (1.0 + (q as f64).sqrt()) / 2.0;
        ensure((eig.lambda - closed).abs() < 1e-6, || format!("Paley({q}): lambda {} vs {closed}", eig.lambda))?;
        ensure((eig.inner_max - (closed - 1.0)).abs() < 1e-6 && (eig.inner_min + closed).abs() < 1e-6, || format!("Paley({q}) spectrum"))?;
        let d = (q - 1) / 2;
        let adj = adjacency(&g);
        let mut violations = 0;
        for _ in 0..10_000 {
            let mut pick = || {
                let mut v: Vec<usize> = (0..q).collect();
                v.shuffle(&mut rng);
                v.truncate(rng.gen_range(0..=q));
                v
            };
            let (s, t) = (pick(), pick());
            let e = s.iter().flat_map(|&u| t.iter().map(move |&v| (u, v))).filter(|&(u, v)| adj[u][v]).count() as f64;
            let (fs, ft) = (s.len() as f64, t.len() as f64);
            if (e - d as f64 * fs * ft / q as f64).abs() > eig.lambda * (fs * ft).sqrt() + 1e-9 {
                violations += 1;
            }
        }
        ensure(violations == 0, || format!("Paley({q}): {violations} violations"))?;
        parts.push(format!("Paley({q}) lambda = {:.6}, 0/10000 violations", eig.lambda));
    }
    Ok(parts.join(", "))
}

fn adjacency(g: &UndirectedGraph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

fn criterion_10() -> Verdict {
    let g = circulant_graph(18, &(1..=8).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let d = g.regular_degree().ok_or("not regular")?;
    let lambda = lambda_extremes(&g, DEFAULT_TOL).map_err(|e| e.to_string())?.lambda;
    let oriented = g.eulerian_orient().map_err(|e| e.to_string())?;
    ensure((0..18).all(|v| oriented.in_degree(v) == oriented.out_degree(v)), || "orientation is not Eulerian".into())?;
    let fas = fas_exact(&oriented).map_err(|e| e.to_string())?;
    ensure(acyclic_without(&oriented, &fas.arcs), || "fas witness".into())?;
    let bound = ((d as f64 - lambda) * 18.0 / 8.0 - 1e-6).ceil() as usize;
    ensure(fas.size() >= bound, || format!("fas {} < {bound}", fas.size()))?;
    Ok(format!("circulant(18, 1..8): d = {d}, lambda = {lambda:.6}, fas = {} >= {bound}", fas.size()))
}

fn criterion_11() -> Verdict {
    let report = verify_paper(&[], HarnessOptions::default());
    let mut audited = 0;
    for check in &report.checks {
        for rec in &check.instances {
            audited += 1;
            let Some(girth) = rec.girth else { continue };
            let lo = rec.fasd_lower.ok_or(format!("{}: no verified coloring", rec.label))?;
            ensure(lo >= 2 && lo <= girth, || format!("{}: fasd >= {lo}, girth {girth}", rec.label))?;
            if let Some(f) = rec.fas_upper {
                ensure(f * lo <= rec.arcs, || format!("{}: fas {f} > {}/{lo}", rec.label, rec.arcs))?;
            }
        }
    }
    ensure(report.passed(), || report.table())?;
    Ok(format!("{audited} verify-paper instances, 0 violations"))
}

fn criterion_12() -> Verdict {
    for seed in 0..200u64 {
        let n = 1 + seed as usize % 8;
        let d = random_small_orgraph(n, 0.2 + 0.1 * (seed % 7) as f64, 31_000 + seed);
        let exact = fas_exact(&d).map_err(|e| e.to_string())?.value;
        ensure(exact == brute_force_fas(&d), || format!("fas mismatch on seed {seed}"))?;
    }
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 100 {
        let d = random_orgraph_with_arcs(3 + seed as usize % 6, 3 + seed as usize % 8, 41_000 + seed);
        seed += 1;
        if d.arc_count() > 10 {
            continue;
        }
        checked += 1;
        let exact = match fasd_exact(&d, DEFAULT_BUDGET).map_err(|e| e.to_string())?.value {
            FasdValue::Exact(v) => Some(v),
            FasdValue::Infinite => None,
            other => return Err(format!("budget ran out: {other:?}")),
        };
        ensure(exact == brute_force_fasd(&d), || format!("fasd mismatch on {:?}", d.arcs()))?;
    }
    Ok("fas on 200 orgraphs with n <= 8, fasd on 100 orgraphs with <= 10 arcs: all equal".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("D8 exactness", criterion_1),
        ("H5 refutation at t=4", criterion_2),
        ("H4 and H3 conflict cliques", criterion_3),
        ("three-way decomposition", criterion_4),
        ("weighted one-third bound", criterion_5),
        ("good g-colorings at max degree 3", criterion_6),
        ("one-sixth feedback arc sets", criterion_7),
        ("counting bound on D_g", criterion_8),
        ("expander mixing on Paley graphs", criterion_9),
        ("spectral lower bound on an orientation", criterion_10),
        ("inequality suite", criterion_11),
        ("oracle equivalence", criterion_12),
    ];
    let worker = std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || {
            let mut failed = 0;
            for (i, (name, run)) in criteria.iter().enumerate() {
                let start = Instant::now();
                let verdict = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
                let secs = start.elapsed().as_secs_f64();
                match verdict {
                    Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1}s]", i + 1),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL {:>2} {name}: {msg} [{secs:.1}s]", i + 1);
                    }
                }
            }
            failed
        })
        .expect("spawn acceptance thread");
    let failed = worker.join().expect("acceptance thread");
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Minimum feedback arc sets: an exact subset dynamic program for small
//! graphs and a seeded insertion heuristic for everything else.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{strong_components, ArcId, Digraph, Vertex};
use crate::ordering::backward_arcs;

/// Largest strong component the exact solver accepts.
pub const EXACT_LIMIT: usize = 20;

/// Fixed-point scale for weights with at most six fraction digits.
const SCALE: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FasKind {
    Unweighted,
    Weighted,
}

/// An optimal ordering and the feedback arc set it induces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FasCertificate {
    pub kind: FasKind,
    pub value: f64,
    /// Ordering whose backward arcs attain `value`.
    pub ordering: Vec<Vertex>,
    pub arcs: Vec<ArcId>,
    pub note: Option<String>,
}

impl FasCertificate {
    /// Value as an integer (unweighted certificates only).
    pub fn size(&self) -> usize {
        self.arcs.len()
    }
}

/// Minimum FAS size, ignoring weights.
pub fn fas_exact(d: &Digraph) -> Result<FasCertificate> {
    let plain = d.unweighted();
    let costs = vec![1u64; d.arc_count()];
    let (ordering, _) = exact_ordering(&plain, &costs)?;
    let arcs = backward_arcs(d, &ordering)?;
    Ok(FasCertificate { kind: FasKind::Unweighted, value: arcs.len() as f64, ordering, arcs, note: None })
}

/// Minimum FAS weight. Weights with at most six fraction digits are solved
/// in exact fixed-point arithmetic; other weights fall back to floats and
/// the certificate says so.
pub fn fas_weighted_exact(d: &Digraph) -> Result<FasCertificate> {
    let w: Vec<f64> = (0..d.arc_count()).map(|a| d.weight(a)).collect();
    let fixed: Option<Vec<u64>> = w
        .iter()
        .map(|&x| {
            let s = (x * SCALE).round();
            ((x * SCALE - s).abs() <= 1e-6 * s.max(1.0) && s < 1e15).then_some(s as u64)
        })
        .collect();
    let (ordering, note) = match fixed {
        Some(costs) => (exact_ordering(d, &costs)?.0, None),
        None => (exact_ordering_float(d, &w)?, Some("weights not representable in 6 decimals; float arithmetic".into())),
    };
    let arcs = backward_arcs(d, &ordering)?;
    let value = arcs.iter().map(|&a| w[a]).sum();
    Ok(FasCertificate { kind: FasKind::Weighted, value, ordering, arcs, note })
}

fn check_size(d: &Digraph) -> Result<Vec<Vec<Vertex>>> {
    let comps = strong_components(d);
    if let Some(c) = comps.iter().find(|c| c.len() > EXACT_LIMIT) {
        return Err(Error::TooLarge(format!(
            "strong component with {} vertices exceeds the exact limit of {EXACT_LIMIT}",
            c.len()
        )));
    }
    Ok(comps)
}

/// Per strong component: out-neighbour bitmasks and arc costs in local ids.
struct Local {
    vertices: Vec<Vertex>,
    out: Vec<Vec<(usize, ArcId)>>,
}

fn localize(d: &Digraph, comp: &[Vertex]) -> Local {
    let mut local = vec![usize::MAX; d.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let out = comp
        .iter()
        .map(|&v| {
            d.out_arcs(v)
                .iter()
                .filter_map(|&a| {
                    let h = local[d.arc(a).1];
                    (h != usize::MAX).then_some((h, a))
                })
                .collect()
        })
        .collect();
    Local { vertices: comp.to_vec(), out }
}

/// Optimal ordering under integer arc costs. Components are solved
/// separately and concatenated in topological order.
fn exact_ordering(d: &Digraph, costs: &[u64]) -> Result<(Vec<Vertex>, u64)> {
    let mut order = Vec::with_capacity(d.n());
    let mut total = 0;
    for comp in check_size(d)? {
        let local = localize(d, &comp);
        let k = comp.len();
        if k == 1 {
            order.push(comp[0]);
            continue;
        }
        let unit = local.out.iter().flatten().all(|&(_, a)| costs[a] == 1);
        let mask: Vec<usize> = local.out.iter().map(|o| o.iter().fold(0, |m, &(h, _)| m | 1 << h)).collect();
        let full = (1usize << k) - 1;
        let mut f = vec![0u64; full + 1];
        let mut last = vec![0u8; full + 1];
        for s in 1..=full {
            let mut best = u64::MAX;
            let mut arg = 0;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = s & !(1 << v);
                let c = if unit {
                    f[rest] + u64::from((mask[v] & rest).count_ones())
                } else {
                    f[rest] + local.out[v].iter().filter(|&&(h, _)| rest >> h & 1 == 1).map(|&(_, a)| costs[a]).sum::<u64>()
                };
                if c <= best {
                    best = c;
                    arg = v;
                }
            }
            f[s] = best;
            last[s] = arg as u8;
        }
        total += f[full];
        order.extend(reconstruct(&last, full, k).into_iter().map(|v| local.vertices[v]));
    }
    Ok((order, total))
}

fn exact_ordering_float(d: &Digraph, w: &[f64]) -> Result<Vec<Vertex>> {
    let mut order = Vec::with_capacity(d.n());
    for comp in check_size(d)? {
        let local = localize(d, &comp);
        let k = comp.len();
        let full = (1usize << k) - 1;
        let mut f = vec![0f64; full + 1];
        let mut last = vec![0u8; full + 1];
        for s in 1..=full {
            let mut best = f64::INFINITY;
            let mut arg = 0;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = s & !(1 << v);
                let c = f[rest] + local.out[v].iter().filter(|&&(h, _)| rest >> h & 1 == 1).map(|&(_, a)| w[a]).sum::<f64>();
                if c <= best {
                    best = c;
                    arg = v;
                }
            }
            f[s] = best;
            last[s] = arg as u8;
        }
        order.extend(reconstruct(&last, full, k).into_iter().map(|v| local.vertices[v]));
    }
    Ok(order)
}

/// `last[s]` is the vertex placed last among `s`.
fn reconstruct(last: &[u8], full: usize, k: usize) -> Vec<usize> {
    let mut seq = Vec::with_capacity(k);
    let mut s = full;
    while s != 0 {
        let v = last[s] as usize;
        seq.push(v);
        s &= !(1 << v);
    }
    seq.reverse();
    seq
}

/// Options for [`fas_upper_heuristic`].
#[derive(Debug, Clone, Copy)]
pub struct HeuristicOptions {
    pub seed: u64,
    /// Random restarts after the greedy start.
    pub restarts: usize,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        HeuristicOptions { seed: 0, restarts: 8 }
    }
}

/// An ordering whose backward weight upper-bounds the minimum FAS weight.
/// Greedy source/sink peeling followed by best-insertion local search, then
/// seeded random restarts; the lightest ordering found wins.
pub fn fas_upper_heuristic(d: &Digraph, opts: HeuristicOptions) -> Vec<Vertex> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = greedy_order(d);
    insertion_search(d, &mut best);
    let mut best_cost = cost(d, &best);
    for _ in 0..opts.restarts {
        if best_cost == 0.0 {
            break;
        }
        let mut order: Vec<Vertex> = (0..d.n()).collect();
        order.shuffle(&mut rng);
        insertion_search(d, &mut order);
        let c = cost(d, &order);
        if c < best_cost {
            best_cost = c;
            best = order;
        }
    }
    best
}

fn cost(d: &Digraph, order: &[Vertex]) -> f64 {
    crate::ordering::backward_weight(d, order).expect("heuristic orders are permutations")
}

/// Eades-Lin-Smyth style peeling: sinks go to the back, sources to the
/// front, otherwise the vertex with the largest out-minus-in weight goes to
/// the front.
fn greedy_order(d: &Digraph) -> Vec<Vertex> {
    let n = d.n();
    let mut alive = vec![true; n];
    let mut outw = vec![0.0; n];
    let mut inw = vec![0.0; n];
    let mut outc = vec![0usize; n];
    let mut inc = vec![0usize; n];
    for a in 0..d.arc_count() {
        let (u, v) = d.arc(a);
        outw[u] += d.weight(a);
        inw[v] += d.weight(a);
        outc[u] += 1;
        inc[v] += 1;
    }
    let mut front = Vec::with_capacity(n);
    let mut back = Vec::with_capacity(n);
    let mut remaining = n;
    while remaining > 0 {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .max_by(|&x, &y| {
                let key = |v: usize| {
                    if outc[v] == 0 {
                        (2, 0.0)
                    } else if inc[v] == 0 {
                        (1, 0.0)
                    } else {
                        (0, outw[v] - inw[v])
                    }
                };
                let (kx, sx) = key(x);
                let (ky, sy) = key(y);
                kx.cmp(&ky).then(sx.total_cmp(&sy)).then(y.cmp(&x))
            })
            .expect("remaining > 0");
        alive[pick] = false;
        remaining -= 1;
        if outc[pick] == 0 {
            back.push(pick);
        } else {
            front.push(pick);
        }
        for &a in d.out_arcs(pick) {
            let v = d.arc(a).1;
            inw[v] -= d.weight(a);
            inc[v] -= 1;
        }
        for &a in d.in_arcs(pick) {
            let u = d.arc(a).0;
            outw[u] -= d.weight(a);
            outc[u] -= 1;
        }
    }
    back.reverse();
    front.extend(back);
    front
}

/// Moves single vertices to their best position until no move helps.
fn insertion_search(d: &Digraph, order: &mut Vec<Vertex>) {
    let n = d.n();
    let mut pos = vec![0usize; n];
    let mut improved = true;
    let mut rounds = 0;
    while improved && rounds < 100 {
        improved = false;
        rounds += 1;
        for v in 0..n {
            for (i, &x) in order.iter().enumerate() {
                pos[x] = i;
            }
            let from = pos[v];
            // Slot k means "before the vertex currently at index k" in the
            // order with v removed; neighbours are indexed in that order.
            let shifted = |p: usize| if p > from { p - 1 } else { p };
            let mut events: Vec<(usize, f64)> = Vec::new();
            let mut base = 0.0;
            for &a in d.out_arcs(v) {
                // (v, u) is backward iff u sits before v: slot > pos(u).
                events.push((shifted(pos[d.arc(a).1]) + 1, d.weight(a)));
            }
            for &a in d.in_arcs(v) {
                // (u, v) is backward iff slot <= pos(u).
                base += d.weight(a);
                events.push((shifted(pos[d.arc(a).0]) + 1, -d.weight(a)));
            }
            events.sort_by_key(|e| e.0);
            let current_slot = from;
            let eval = |slot: usize| base + events.iter().take_while(|e| e.0 <= slot).map(|e| e.1).sum::<f64>();
            let current = eval(current_slot);
            let mut best = (current, current_slot);
            let mut acc = base;
            let mut i = 0;
            while i < events.len() {
                let slot = events[i].0;
                while i < events.len() && events[i].0 == slot {
                    acc += events[i].1;
                    i += 1;
                }
                if acc < best.0 - 1e-12 {
                    best = (acc, slot);
                }
            }
            if base < best.0 - 1e-12 {
                best = (base, 0);
            }
            if best.1 != current_slot {
                order.remove(from);
                order.insert(best.1, v);
                improved = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_fas_one() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = fas_exact(&d).unwrap();
        assert_eq!(c.value, 1.0);
        assert_eq!(c.arcs, vec![2]);
    }

    #[test]
    fn oversized_component_is_refused() {
        let n = EXACT_LIMIT + 1;
        let d = Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap();
        assert!(matches!(fas_exact(&d), Err(Error::TooLarge(_))));
    }

    #[test]
    fn long_acyclic_chain_is_not_refused() {
        let d = Digraph::new(40, (0..39).map(|i| (i, i + 1)).collect()).unwrap();
        assert_eq!(fas_exact(&d).unwrap().value, 0.0);
    }

    #[test]
    fn heuristic_on_cycle_and_dag() {
        let cyc = Digraph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        assert_eq!(cost(&cyc, &fas_upper_heuristic(&cyc, HeuristicOptions::default())), 1.0);
        let dag = Digraph::new(5, vec![(3, 1), (1, 0), (4, 2), (2, 0)]).unwrap();
        assert_eq!(cost(&dag, &fas_upper_heuristic(&dag, HeuristicOptions::default())), 0.0);
    }
}

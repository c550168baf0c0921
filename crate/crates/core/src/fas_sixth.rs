//! Feedback arc sets with at most `a(D) / 6` arcs for orgraphs with
//! maximum degree 3 and girth at least 6.
//!
//! Vertices of a strong component split into `X+` (out-degree 2), `X-`
//! (in-degree 2) and `X0` (one arc each way); `X0` induces disjoint paths
//! `x -> v1 -> ... -> vk -> y`. Each reduction deletes a configuration
//! spanning at least six arcs, all of whose cycles pass through one arc.
//! When none applies, suppressing the `X0` paths and contracting the
//! perfect matching of `X- -> X+` arcs leaves a 4-regular multigraph whose
//! feedback vertex sets map back to matching arcs.

use serde::{Deserialize, Serialize};

use crate::delta3::degree_classes;
use crate::error::{Error, Result};
use crate::fvs::{fvs_exact, odd_digon_cycle, split_odd_digon_cycle};
use crate::graph::{strong_components, ArcId, Digraph, Girth, MultiDigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SixthStep {
    /// Not strongly connected; components handled separately.
    Split,
    /// A single directed cycle; one arc suffices.
    Cycle,
    /// An `X0` path with at least 3 vertices entered from `X-`, or leaving into `X+`.
    LongPathAtEnd,
    /// An `X0` path from `X-` to `X+`.
    PathMinusToPlus,
    /// Two adjacent vertices of `X+`, or of `X-`.
    AdjacentSameClass,
    /// An `X0` path whose ends are both in `X+`, or both in `X-`.
    PathSameClass,
    /// An `X0` path `x ... y` with the arc `y -> x`.
    PathClosedByArc,
    /// The contracted multigraph had a feedback vertex set of the given size.
    Contracted { vertices: usize, fvs: usize, odd_digon_cycle: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixthReport {
    /// Sorted arc ids.
    pub arcs: Vec<ArcId>,
    pub steps: Vec<SixthStep>,
}

/// Budget for each feedback vertex search in the terminal phase.
pub const FVS_BUDGET: u64 = 50_000_000;

pub fn fas_sixth(d: &Digraph) -> Result<SixthReport> {
    if d.max_degree() > 3 {
        return Err(Error::Precondition(format!("maximum degree {} exceeds 3", d.max_degree())));
    }
    if let Girth::Finite(g) = d.girth() {
        if g < 6 {
            return Err(Error::Precondition(format!("girth {g} is below 6")));
        }
    }
    let mut steps = Vec::new();
    let mut arcs = reduce(d, &mut steps, 0, d.n() + 1)?;
    arcs.sort_unstable();
    let (rest, _) = d.filter_arcs(|a| arcs.binary_search(&a).is_err());
    if !rest.is_acyclic() || 6 * arcs.len() > d.arc_count() {
        return Err(Error::InternalGap(format!("{} arcs for {} arcs of input, acyclic: {}", arcs.len(), d.arc_count(), rest.is_acyclic())));
    }
    Ok(SixthReport { arcs, steps })
}

/// An `X0` path with its neighbours in `X+ ∪ X-`.
struct ZeroPath {
    x: Vertex,
    inner: Vec<Vertex>,
    y: Vertex,
}

fn zero_paths(d: &Digraph, zero: &[bool]) -> Result<Vec<ZeroPath>> {
    let mut out = Vec::new();
    for v in 0..d.n() {
        let pred = d.in_neighbors(v).next();
        if !zero[v] || pred.is_some_and(|p| zero[p]) {
            continue;
        }
        let mut inner = vec![v];
        let mut cur = v;
        loop {
            let next = d.out_neighbors(cur).next().ok_or_else(|| Error::InternalGap("X0 vertex without out-arc".into()))?;
            if !zero[next] {
                out.push(ZeroPath { x: pred.expect("X0 vertex has an in-arc"), inner, y: next });
                break;
            }
            inner.push(next);
            cur = next;
        }
    }
    Ok(out)
}

fn reduce(d: &Digraph, steps: &mut Vec<SixthStep>, depth: usize, max_depth: usize) -> Result<Vec<ArcId>> {
    if depth > max_depth {
        return Err(Error::InternalGap("reduction deeper than the vertex count".into()));
    }
    if d.is_acyclic() {
        return Ok(Vec::new());
    }
    let comps = strong_components(d);
    if comps.len() > 1 {
        steps.push(SixthStep::Split);
        let mut out = Vec::new();
        for comp in comps.iter().filter(|c| c.len() > 1) {
            let mut keep = vec![false; d.n()];
            for &v in comp {
                keep[v] = true;
            }
            let (sub, _, map) = d.induced(&keep);
            out.extend(reduce(&sub, steps, depth + 1, max_depth)?.into_iter().map(|a| map[a]));
        }
        return Ok(out);
    }
    let classes = degree_classes(d);
    if !classes.is_complete() {
        return Err(Error::InternalGap(format!("vertex {} outside the degree classes", classes.other[0])));
    }
    if classes.x21.is_empty() {
        steps.push(SixthStep::Cycle);
        return Ok(vec![0]);
    }
    let mut plus = vec![false; d.n()];
    let mut minus = vec![false; d.n()];
    let mut zero = vec![false; d.n()];
    classes.x21.iter().for_each(|&v| plus[v] = true);
    classes.x12.iter().for_each(|&v| minus[v] = true);
    classes.x11.iter().for_each(|&v| zero[v] = true);
    let paths = zero_paths(d, &zero)?;
    if let Some(p) = paths.iter().find(|p| p.x == p.y) {
        return Err(Error::InternalGap(format!("X0 path closes at {} in a strong component", p.x)));
    }
    let arc = |u: Vertex, v: Vertex| d.arc_between(u, v).expect("consecutive vertices are adjacent");
    let mut step = |kind: SixthStep, removed: Vec<Vertex>, cut: ArcId| -> Result<Vec<ArcId>> {
        steps.push(kind);
        let mut keep = vec![true; d.n()];
        for v in removed {
            keep[v] = false;
        }
        let (sub, _, map) = d.induced(&keep);
        let mut out: Vec<ArcId> = reduce(&sub, steps, depth + 1, max_depth)?.into_iter().map(|a| map[a]).collect();
        out.push(cut);
        Ok(out)
    };
    let with = |p: &ZeroPath, extra: &[Vertex]| -> Vec<Vertex> { p.inner.iter().chain(extra).copied().collect() };

    for p in &paths {
        if p.inner.len() >= 3 {
            if minus[p.x] {
                return step(SixthStep::LongPathAtEnd, with(p, &[p.x]), arc(p.x, p.inner[0]));
            }
            if plus[p.y] {
                return step(SixthStep::LongPathAtEnd, with(p, &[p.y]), arc(*p.inner.last().unwrap(), p.y));
            }
        }
    }
    if let Some(p) = paths.iter().find(|p| minus[p.x] && plus[p.y]) {
        return step(SixthStep::PathMinusToPlus, with(p, &[p.x, p.y]), arc(p.x, p.inner[0]));
    }
    for &(u, v) in d.arcs() {
        if plus[u] && plus[v] {
            let mut first = u;
            let mut second = v;
            for _ in 0..d.n() {
                let pred = d.in_neighbors(first).next().expect("X+ vertex has an in-arc");
                if !plus[pred] {
                    return step(SixthStep::AdjacentSameClass, vec![first, second, pred], arc(pred, first));
                }
                second = first;
                first = pred;
            }
            return Err(Error::InternalGap("X+ contains a directed cycle".into()));
        }
        if minus[u] && minus[v] {
            let mut last = v;
            let mut second = u;
            for _ in 0..d.n() {
                let succ = d.out_neighbors(last).next().expect("X- vertex has an out-arc");
                if !minus[succ] {
                    return step(SixthStep::AdjacentSameClass, vec![second, last, succ], arc(last, succ));
                }
                second = last;
                last = succ;
            }
            return Err(Error::InternalGap("X- contains a directed cycle".into()));
        }
    }
    for p in &paths {
        if plus[p.x] && plus[p.y] {
            let before = d.in_neighbors(p.x).next().expect("X+ vertex has an in-arc");
            return step(SixthStep::PathSameClass, with(p, &[p.x, p.y, before]), arc(before, p.x));
        }
        if minus[p.x] && minus[p.y] {
            let after = d.out_neighbors(p.y).next().expect("X- vertex has an out-arc");
            return step(SixthStep::PathSameClass, with(p, &[p.x, p.y, after]), arc(p.y, after));
        }
    }
    if let Some((p, back)) = paths.iter().find_map(|p| d.arc_between(p.y, p.x).map(|a| (p, a))) {
        return step(SixthStep::PathClosedByArc, with(p, &[p.x, p.y]), back);
    }
    contract(d, &plus, &minus, &paths, steps)
}

/// Terminal phase: every `X0` path runs from `X+` to `X-`, and `X+`, `X-`
/// are independent.
fn contract(d: &Digraph, plus: &[bool], minus: &[bool], paths: &[ZeroPath], steps: &mut Vec<SixthStep>) -> Result<Vec<ArcId>> {
    // matching arcs X- -> X+, indexed by contracted vertex
    let mut matching: Vec<ArcId> = Vec::new();
    let mut node_of = vec![usize::MAX; d.n()];
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        if minus[u] && plus[v] {
            if node_of[u] != usize::MAX || node_of[v] != usize::MAX {
                return Err(Error::InternalGap(format!("arcs X- -> X+ at {u} or {v} do not form a matching")));
            }
            node_of[u] = matching.len();
            node_of[v] = matching.len();
            matching.push(a);
        }
    }
    let mut contracted = Vec::new();
    for &(u, v) in d.arcs() {
        if plus[u] && minus[v] {
            contracted.push((node_of[u], node_of[v]));
        }
    }
    for p in paths {
        contracted.push((node_of[p.x], node_of[p.y]));
    }
    if contracted.iter().any(|&(a, b)| a == usize::MAX || b == usize::MAX) {
        return Err(Error::InternalGap("some vertex of X+ or X- lies on no matching arc".into()));
    }
    if let Some(&(a, _)) = contracted.iter().find(|&&(a, b)| a == b) {
        return Err(Error::InternalGap(format!("contraction creates a loop at matching arc {}", matching[a])));
    }
    let k = matching.len();
    let dd = MultiDigraph::new(k, contracted)?;
    if dd.max_degree() > 4 {
        return Err(Error::InternalGap("contracted multigraph has degree above 4".into()));
    }
    let cert = fvs_exact(&dd, FVS_BUDGET)?;
    let exceptional = odd_digon_cycle(&dd).is_some();
    if exceptional {
        if suppress_zero_paths(d, paths).and_then(|g| split_odd_digon_cycle(&g)).is_none() {
            return Err(Error::InternalGap("odd digon cycle after contraction without the split form before it".into()));
        }
    } else if 2 * cert.vertices.len() > k {
        return Err(Error::InternalGap(format!("minimum feedback vertex set {} exceeds half of {k}", cert.vertices.len())));
    }
    steps.push(SixthStep::Contracted { vertices: k, fvs: cert.vertices.len(), odd_digon_cycle: exceptional });
    Ok(cert.vertices.iter().map(|&i| matching[i]).collect())
}

/// The graph on `X+ ∪ X-` with each `X0` path replaced by one arc, when
/// no parallel arcs arise.
fn suppress_zero_paths(d: &Digraph, paths: &[ZeroPath]) -> Option<Digraph> {
    let mut zero = vec![false; d.n()];
    for p in paths {
        for &v in &p.inner {
            zero[v] = true;
        }
    }
    let kept: Vec<Vertex> = (0..d.n()).filter(|&v| !zero[v]).collect();
    let mut index = vec![usize::MAX; d.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut arcs: Vec<(Vertex, Vertex)> =
        d.arcs().iter().filter(|&&(u, v)| !zero[u] && !zero[v]).map(|&(u, v)| (index[u], index[v])).collect();
    arcs.extend(paths.iter().map(|p| (index[p.x], index[p.y])));
    Digraph::new(kept.len(), arcs).ok()
}

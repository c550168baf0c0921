//! Good arc-colorings and the exact value of `fasd`.
//!
//! A `t`-coloring of the arcs is good when every directed cycle meets all
//! `t` colors, equivalently when deleting any single color class leaves an
//! acyclic graph. `fasd(D)` is the largest `t` admitting a good coloring.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_cycle, ArcId, Digraph, Girth, Vertex};

/// Default search node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cap on the number of tight cycles collected for ordering and conflicts.
const TIGHT_CYCLE_CAP: usize = 500_000;

/// Cycles up to `t + SHORT_SLACK` arcs feed the counting prune.
const SHORT_SLACK: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcColoring {
    pub t: usize,
    /// `colors[a]` in `0..t` for every arc id `a`.
    pub colors: Vec<usize>,
}

impl ArcColoring {
    /// Arc ids of each color class.
    pub fn classes(&self) -> Vec<Vec<ArcId>> {
        let mut classes = vec![Vec::new(); self.t];
        for (a, &c) in self.colors.iter().enumerate() {
            classes[c].push(a);
        }
        classes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringViolation {
    Length { expected: usize, got: usize },
    ColorOutOfRange { arc: ArcId, color: usize },
    /// The arcs not colored `color` contain this cycle.
    MissingColor { color: usize, cycle: Vec<ArcId> },
}

/// Checks that removing any one color class leaves an acyclic graph.
pub fn verify_good_coloring(d: &Digraph, c: &ArcColoring) -> std::result::Result<(), ColoringViolation> {
    if c.colors.len() != d.arc_count() {
        return Err(ColoringViolation::Length { expected: d.arc_count(), got: c.colors.len() });
    }
    if let Some((arc, &color)) = c.colors.iter().enumerate().find(|(_, &x)| x >= c.t) {
        return Err(ColoringViolation::ColorOutOfRange { arc, color });
    }
    for color in 0..c.t {
        let (rest, kept) = d.filter_arcs(|a| c.colors[a] != color);
        if let Some(cycle) = find_cycle(&rest) {
            return Err(ColoringViolation::MissingColor { color, cycle: cycle.into_iter().map(|a| kept[a]).collect() });
        }
    }
    Ok(())
}

/// Cycles of length exactly `t`, as vertex sequences, plus a truncation flag.
pub fn tight_cycles(d: &Digraph, t: usize) -> (Vec<Vec<Vertex>>, bool) {
    let list = d.enumerate_cycles(Some(t), TIGHT_CYCLE_CAP);
    (list.cycles.into_iter().filter(|c| c.len() == t).collect(), list.truncated)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Sat(ArcColoring),
    Unsat,
    BudgetExceeded,
}

/// Result of one backtracking run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

/// Backtracking search for a good `t`-coloring.
///
/// Arcs are colored in order of decreasing number of tight cycles through
/// them. For every color `c` the arcs already colored differently form the
/// remainder graph `R_c`, kept acyclic through an incrementally repaired
/// topological order; a color is rejected as soon as it would close a cycle
/// in some remainder. Arcs sharing a tight cycle must differ, a short cycle
/// is abandoned once its uncolored arcs cannot supply its missing colors,
/// and a new color index is only opened one at a time.
pub fn good_coloring_search(d: &Digraph, t: usize, budget: u64) -> Result<SearchReport> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    if t == 1 || d.arc_count() == 0 {
        return Ok(SearchReport { outcome: SearchOutcome::Sat(ArcColoring { t, colors: vec![0; d.arc_count()] }), nodes: 0 });
    }
    let short = d.enumerate_cycles(Some(t + SHORT_SLACK), TIGHT_CYCLE_CAP).cycles;
    let mut search = Search::new(d, t, &short, budget);
    let found = search.run(0, 0);
    let nodes = search.nodes;
    let outcome = match found {
        Err(()) => SearchOutcome::BudgetExceeded,
        Ok(false) => SearchOutcome::Unsat,
        Ok(true) => {
            let colors = search.colors.iter().map(|c| c.expect("all arcs colored on success")).collect();
            SearchOutcome::Sat(ArcColoring { t, colors })
        }
    };
    Ok(SearchReport { outcome, nodes })
}

/// One remainder graph with a Pearce-Kelly topological order.
struct Remainder {
    ord: Vec<usize>,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    mark: Vec<u32>,
    stamp: u32,
}

impl Remainder {
    fn new(n: usize) -> Self {
        Remainder { ord: (0..n).collect(), out: vec![Vec::new(); n], inc: vec![Vec::new(); n], mark: vec![0; n], stamp: 0 }
    }

    /// Adds `u -> v` unless it closes a cycle. Removal is LIFO via [`Self::pop`].
    fn push(&mut self, u: Vertex, v: Vertex) -> bool {
        if self.ord[u] < self.ord[v] {
            self.out[u].push(v);
            self.inc[v].push(u);
            return true;
        }
        let (lb, ub) = (self.ord[v], self.ord[u]);
        self.stamp += 1;
        let stamp = self.stamp;
        let mut fwd = Vec::new();
        let mut stack = vec![v];
        self.mark[v] = stamp;
        while let Some(x) = stack.pop() {
            if x == u {
                return false;
            }
            fwd.push(x);
            for &y in &self.out[x] {
                if self.mark[y] != stamp && self.ord[y] <= ub {
                    self.mark[y] = stamp;
                    stack.push(y);
                }
            }
        }
        let mut back = Vec::new();
        stack.push(u);
        self.mark[u] = stamp;
        while let Some(x) = stack.pop() {
            back.push(x);
            for &y in &self.inc[x] {
                if self.mark[y] != stamp && self.ord[y] >= lb {
                    self.mark[y] = stamp;
                    stack.push(y);
                }
            }
        }
        back.sort_by_key(|&x| self.ord[x]);
        fwd.sort_by_key(|&x| self.ord[x]);
        let mut slots: Vec<usize> = back.iter().chain(&fwd).map(|&x| self.ord[x]).collect();
        slots.sort_unstable();
        for (x, slot) in back.into_iter().chain(fwd).zip(slots) {
            self.ord[x] = slot;
        }
        self.out[u].push(v);
        self.inc[v].push(u);
        true
    }

    fn pop(&mut self, u: Vertex, v: Vertex) {
        let a = self.out[u].pop();
        let b = self.inc[v].pop();
        debug_assert_eq!((a, b), (Some(v), Some(u)));
    }
}

struct Search<'a> {
    d: &'a Digraph,
    t: usize,
    order: Vec<ArcId>,
    conflicts: Vec<Vec<ArcId>>,
    forbid: Vec<Vec<u32>>,
    colors: Vec<Option<usize>>,
    rem: Vec<Remainder>,
    /// Short cycles through each arc.
    arc_cycles: Vec<Vec<usize>>,
    /// Per short cycle: uncolored arcs, distinct colors present, count per color.
    uncolored: Vec<usize>,
    distinct: Vec<usize>,
    counts: Vec<u16>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a Digraph, t: usize, cycles: &[Vec<Vertex>], budget: u64) -> Self {
        let m = d.arc_count();
        let mut through = vec![0usize; m];
        let mut conflicts = vec![Vec::new(); m];
        let mut arc_cycles = vec![Vec::new(); m];
        let mut uncolored = Vec::with_capacity(cycles.len());
        for (ci, cyc) in cycles.iter().enumerate() {
            let arcs = d.cycle_arcs(cyc).expect("enumerated cycles use existing arcs");
            uncolored.push(arcs.len());
            for &a in &arcs {
                arc_cycles[a].push(ci);
            }
            if arcs.len() != t {
                continue;
            }
            for (i, &a) in arcs.iter().enumerate() {
                through[a] += 1;
                for &b in &arcs[i + 1..] {
                    conflicts[a].push(b);
                    conflicts[b].push(a);
                }
            }
        }
        for c in &mut conflicts {
            c.sort_unstable();
            c.dedup();
        }
        let mut order: Vec<ArcId> = (0..m).collect();
        order.sort_by_key(|&a| (std::cmp::Reverse((through[a], arc_cycles[a].len())), a));
        Search {
            d,
            t,
            order,
            conflicts,
            forbid: vec![vec![0; t]; m],
            colors: vec![None; m],
            rem: (0..t).map(|_| Remainder::new(d.n())).collect(),
            distinct: vec![0; cycles.len()],
            counts: vec![0; cycles.len() * t],
            arc_cycles,
            uncolored,
            nodes: 0,
            budget,
        }
    }

    /// `Ok(true)` on success, `Ok(false)` when exhausted, `Err` on budget.
    fn run(&mut self, depth: usize, used: usize) -> std::result::Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let a = self.order[depth];
        let (u, v) = self.d.arc(a);
        let top = (used + 1).min(self.t);
        for k in 0..top {
            if self.forbid[a][k] > 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            if !self.insert(a, u, v, k) {
                continue;
            }
            let starved = self.count_in(a, k);
            let wiped = self.restrict(a, k);
            if !starved && !wiped && self.run(depth + 1, used.max(k + 1))? {
                return Ok(true);
            }
            self.unrestrict(a, k);
            self.count_out(a, k);
            self.remove(a, u, v, k);
        }
        Ok(false)
    }

    fn insert(&mut self, a: ArcId, u: Vertex, v: Vertex, k: usize) -> bool {
        for c in 0..self.t {
            if c != k && !self.rem[c].push(u, v) {
                for c2 in (0..c).filter(|&c2| c2 != k) {
                    self.rem[c2].pop(u, v);
                }
                return false;
            }
        }
        self.colors[a] = Some(k);
        true
    }

    fn remove(&mut self, a: ArcId, u: Vertex, v: Vertex, k: usize) {
        for c in (0..self.t).rev().filter(|&c| c != k) {
            self.rem[c].pop(u, v);
        }
        self.colors[a] = None;
    }

    /// Records color `k` on the short cycles through `a`; reports a cycle
    /// whose uncolored arcs are fewer than its missing colors.
    fn count_in(&mut self, a: ArcId, k: usize) -> bool {
        let mut starved = false;
        for &ci in &self.arc_cycles[a] {
            self.uncolored[ci] -= 1;
            let cnt = &mut self.counts[ci * self.t + k];
            if *cnt == 0 {
                self.distinct[ci] += 1;
            }
            *cnt += 1;
            starved |= self.t - self.distinct[ci] > self.uncolored[ci];
        }
        starved
    }

    fn count_out(&mut self, a: ArcId, k: usize) {
        for &ci in &self.arc_cycles[a] {
            self.uncolored[ci] += 1;
            let cnt = &mut self.counts[ci * self.t + k];
            *cnt -= 1;
            if *cnt == 0 {
                self.distinct[ci] -= 1;
            }
        }
    }

    /// Forbids color `k` on uncolored conflicting arcs; reports a wipe-out.
    fn restrict(&mut self, a: ArcId, k: usize) -> bool {
        let mut wiped = false;
        for i in 0..self.conflicts[a].len() {
            let b = self.conflicts[a][i];
            if self.colors[b].is_none() {
                self.forbid[b][k] += 1;
                if self.forbid[b].iter().all(|&f| f > 0) {
                    wiped = true;
                }
            }
        }
        wiped
    }

    fn unrestrict(&mut self, a: ArcId, k: usize) {
        for i in 0..self.conflicts[a].len() {
            let b = self.conflicts[a][i];
            if self.colors[b].is_none() {
                self.forbid[b][k] -= 1;
            }
        }
    }
}

/// Arcs pairwise sharing a cycle of length exactly `t`. More than `t` such
/// arcs rule out a good `t`-coloring, since a tight cycle needs `t`
/// distinct colors on its `t` arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictClique {
    pub t: usize,
    pub arcs: Vec<ArcId>,
    /// For each pair `(a, b)` with `a < b`, a tight cycle through both.
    pub witnesses: Vec<(ArcId, ArcId, Vec<Vertex>)>,
}

impl ConflictClique {
    /// Independent check of every witness.
    pub fn verify(&self, d: &Digraph) -> bool {
        if self.arcs.len() <= self.t {
            return false;
        }
        let mut covered = std::collections::HashSet::new();
        for (a, b, cyc) in &self.witnesses {
            let Some(arcs) = (cyc.len() == self.t).then(|| d.cycle_arcs(cyc)).flatten() else { return false };
            let distinct: std::collections::HashSet<_> = cyc.iter().collect();
            if distinct.len() != cyc.len() || !arcs.contains(a) || !arcs.contains(b) {
                return false;
            }
            covered.insert((*a.min(b), *a.max(b)));
        }
        self.arcs.iter().enumerate().all(|(i, &a)| self.arcs[i + 1..].iter().all(|&b| covered.contains(&(a.min(b), a.max(b)))))
    }
}

/// Largest clique size searched exactly; larger targets use a greedy pass.
const EXACT_CLIQUE_LIMIT: usize = 12;

/// Looks for `t + 1` arcs pairwise sharing a tight cycle.
pub fn refute_by_conflict_clique(d: &Digraph, t: usize) -> Option<ConflictClique> {
    if t < 2 {
        return None;
    }
    let (cycles, _) = tight_cycles(d, t);
    let mut witness: HashMap<(ArcId, ArcId), usize> = HashMap::new();
    let mut adj: HashMap<ArcId, Vec<ArcId>> = HashMap::new();
    for (ci, cyc) in cycles.iter().enumerate() {
        let arcs = d.cycle_arcs(cyc).expect("enumerated cycles use existing arcs");
        for (i, &a) in arcs.iter().enumerate() {
            for &b in &arcs[i + 1..] {
                let key = (a.min(b), a.max(b));
                if let std::collections::hash_map::Entry::Vacant(e) = witness.entry(key) {
                    e.insert(ci);
                    adj.entry(a).or_default().push(b);
                    adj.entry(b).or_default().push(a);
                }
            }
        }
    }
    let target = t + 1;
    let mut verts: Vec<ArcId> = adj.iter().filter(|(_, n)| n.len() + 1 >= target).map(|(&a, _)| a).collect();
    verts.sort_by_key(|a| (std::cmp::Reverse(adj[a].len()), *a));
    let linked = |a: ArcId, b: ArcId| witness.contains_key(&(a.min(b), a.max(b)));

    let clique = if target <= EXACT_CLIQUE_LIMIT {
        let mut chosen = Vec::new();
        find_clique(&verts, target, &linked, &mut chosen).then_some(chosen)
    } else {
        verts.iter().find_map(|&start| {
            let mut chosen = vec![start];
            for &x in &verts {
                if x != start && chosen.iter().all(|&c| linked(c, x)) {
                    chosen.push(x);
                }
            }
            (chosen.len() >= target).then(|| chosen[..target].to_vec())
        })
    }?;
    let mut arcs = clique;
    arcs.sort_unstable();
    let mut witnesses = Vec::new();
    for (i, &a) in arcs.iter().enumerate() {
        for &b in &arcs[i + 1..] {
            witnesses.push((a, b, cycles[witness[&(a, b)]].clone()));
        }
    }
    Some(ConflictClique { t, arcs, witnesses })
}

fn find_clique(cands: &[ArcId], target: usize, linked: &impl Fn(ArcId, ArcId) -> bool, chosen: &mut Vec<ArcId>) -> bool {
    if chosen.len() == target {
        return true;
    }
    for (i, &x) in cands.iter().enumerate() {
        if chosen.len() + (cands.len() - i) < target {
            return false;
        }
        let rest: Vec<ArcId> = cands[i + 1..].iter().copied().filter(|&y| linked(x, y)).collect();
        if chosen.len() + 1 + rest.len() < target {
            continue;
        }
        chosen.push(x);
        if find_clique(&rest, target, linked, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Upper bound on good colorings of the gadget `D_g`: three cycles built
/// from pairs of its paths cover every path arc twice and every connector
/// once, so each color needs two arcs and `t <= a / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingBound {
    pub g: usize,
    /// Arc ids of the three cycles, one per pair of paths.
    pub cycles: Vec<Vec<ArcId>>,
    /// Arcs lying on exactly two of the cycles.
    pub double_cover: Vec<ArcId>,
    /// Arcs lying on exactly one of the cycles.
    pub single_cover: Vec<ArcId>,
    /// `floor((|double_cover| + |single_cover|) / 2)`.
    pub bound: usize,
}

/// Builds and checks the counting argument on `D_g` (as produced by
/// [`crate::generators::gadget_dg`]).
pub fn verify_counting_bound(d: &Digraph, g: usize) -> Result<CountingBound> {
    let expected = crate::generators::gadget_dg(g)?;
    if d.arcs() != expected.arcs() || d.n() != expected.n() {
        return Err(Error::Precondition(format!("graph is not the D_{g} gadget")));
    }
    let k = g / 2;
    let path = |j: usize| -> Vec<ArcId> { (0..k - 1).map(|i| j * (k - 1) + i).collect() };
    let connector = |from: usize, to: usize| -> ArcId {
        let idx = from * 2 + if to > from { to - 1 } else { to };
        3 * (k - 1) + idx
    };
    let mut cycles = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut c = path(i);
        c.push(connector(i, j));
        c.extend(path(j));
        c.push(connector(j, i));
        cycles.push(c);
    }
    let mut count = vec![0usize; d.arc_count()];
    for c in &cycles {
        let verts: Vec<Vertex> = c.iter().map(|&a| d.arc(a).0).collect();
        if c.len() != g || d.cycle_arcs(&verts).as_deref() != Some(c.as_slice()) {
            return Err(Error::InternalGap(format!("constructed closed walk {c:?} is not a {g}-cycle")));
        }
        for &a in c {
            count[a] += 1;
        }
    }
    let double_cover: Vec<ArcId> = (0..3 * (k - 1)).collect();
    let single_cover: Vec<ArcId> = (3 * (k - 1)..d.arc_count()).collect();
    if double_cover.iter().any(|&a| count[a] != 2) || single_cover.iter().any(|&a| count[a] != 1) {
        return Err(Error::InternalGap("cover multiplicities differ from 2 on paths and 1 on connectors".into()));
    }
    let bound = (double_cover.len() + single_cover.len()) / 2;
    if bound != g - (g - 4) / 4 {
        return Err(Error::InternalGap(format!("bound {bound} disagrees with g - floor(g/4 - 1)")));
    }
    Ok(CountingBound { g, cycles, double_cover, single_cover, bound })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FasdValue {
    Exact(usize),
    Infinite,
    /// Budget ran out; the true value lies in `lo..=hi`.
    Bracket { lo: usize, hi: usize },
}

/// Why no good coloring with a given number of colors exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refutation {
    /// `t` exceeds the girth: a shortest cycle has fewer than `t` arcs.
    Girth { girth: usize },
    /// Backtracking finished without a solution.
    Exhausted { nodes: u64 },
    ConflictClique(ConflictClique),
    CountingBound(CountingBound),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttemptOutcome {
    Sat,
    Refuted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub t: usize,
    pub outcome: AttemptOutcome,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FasdCertificate {
    pub value: FasdValue,
    /// Good coloring with the largest verified number of colors.
    pub witness: Option<ArcColoring>,
    /// Refutation for one more color than the witness uses.
    pub refutation: Option<(usize, Refutation)>,
    pub attempts: Vec<Attempt>,
}

/// Two colors always suffice on a graph with a cycle: split the arcs of any
/// ordering into backward and forward ones.
fn two_coloring(d: &Digraph) -> ArcColoring {
    ArcColoring { t: 2, colors: d.arcs().iter().map(|&(u, v)| usize::from(u < v)).collect() }
}

/// Largest `t` with a good `t`-coloring, searched downward from the girth.
/// Each `t` first tries a conflict-clique refutation, then a full search
/// with `budget` nodes.
pub fn fasd_exact(d: &Digraph, budget: u64) -> Result<FasdCertificate> {
    let girth = match d.girth() {
        Girth::Infinite => {
            return Ok(FasdCertificate { value: FasdValue::Infinite, witness: None, refutation: None, attempts: vec![] })
        }
        Girth::Finite(g) => g,
    };
    let mut attempts = Vec::new();
    let mut refutation = Some((girth + 1, Refutation::Girth { girth }));
    let mut unknown_above: Option<usize> = None;
    for t in (2..=girth).rev() {
        let found = if t == 2 {
            (two_coloring(d), 0)
        } else if let Some(clique) = refute_by_conflict_clique(d, t) {
            attempts.push(Attempt { t, outcome: AttemptOutcome::Refuted, nodes: 0 });
            refutation = Some((t, Refutation::ConflictClique(clique)));
            continue;
        } else {
            let report = good_coloring_search(d, t, budget)?;
            match report.outcome {
                SearchOutcome::Sat(c) => (c, report.nodes),
                SearchOutcome::Unsat => {
                    attempts.push(Attempt { t, outcome: AttemptOutcome::Refuted, nodes: report.nodes });
                    refutation = Some((t, Refutation::Exhausted { nodes: report.nodes }));
                    continue;
                }
                SearchOutcome::BudgetExceeded => {
                    attempts.push(Attempt { t, outcome: AttemptOutcome::BudgetExceeded, nodes: report.nodes });
                    unknown_above.get_or_insert(t);
                    continue;
                }
            }
        };
        let (coloring, nodes) = found;
        attempts.push(Attempt { t, outcome: AttemptOutcome::Sat, nodes });
        let value = match unknown_above {
            Some(hi) => FasdValue::Bracket { lo: t, hi },
            None => FasdValue::Exact(t),
        };
        let refutation = if unknown_above.is_some() { None } else { refutation };
        return Ok(FasdCertificate { value, witness: Some(coloring), refutation, attempts });
    }
    unreachable!("t = 2 always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::directed_cycle;

    #[test]
    fn remainder_detects_cycles_and_reorders() {
        let mut r = Remainder::new(4);
        assert!(r.push(3, 2));
        assert!(r.push(2, 1));
        assert!(r.push(1, 0));
        assert!(!r.push(0, 3));
        assert!(r.ord[3] < r.ord[2] && r.ord[2] < r.ord[1] && r.ord[1] < r.ord[0]);
        r.pop(1, 0);
        assert!(r.push(0, 3));
    }

    #[test]
    fn cycle_colorings() {
        let c = directed_cycle(5).unwrap();
        let good = ArcColoring { t: 5, colors: vec![0, 1, 2, 3, 4] };
        assert!(verify_good_coloring(&c, &good).is_ok());
        let bad = ArcColoring { t: 5, colors: vec![0, 1, 2, 3, 3] };
        assert!(matches!(verify_good_coloring(&c, &bad), Err(ColoringViolation::MissingColor { color: 4, .. })));
        assert!(matches!(
            verify_good_coloring(&c, &ArcColoring { t: 5, colors: vec![0; 4] }),
            Err(ColoringViolation::Length { .. })
        ));
    }

    #[test]
    fn search_on_cycle() {
        let c = directed_cycle(5).unwrap();
        assert!(matches!(good_coloring_search(&c, 5, 1000).unwrap().outcome, SearchOutcome::Sat(_)));
        assert_eq!(good_coloring_search(&c, 6, 1000).unwrap().outcome, SearchOutcome::Unsat);
        assert!(refute_by_conflict_clique(&c, 5).is_none());
    }

    #[test]
    fn budget_is_distinguished() {
        let d = crate::generators::gadget_dg(10).unwrap();
        assert_eq!(good_coloring_search(&d, 9, 10).unwrap().outcome, SearchOutcome::BudgetExceeded);
        assert!(matches!(good_coloring_search(&d, 9, DEFAULT_BUDGET).unwrap().outcome, SearchOutcome::Sat(_)));
    }
}

//! Exact minimum feedback vertex sets of small digraphs and multigraphs,
//! and recognition of the odd digon cycles `C_o` and their split forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Digraph, Vertex};

/// Largest vertex count accepted by [`fvs_exact`].
pub const FVS_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvsCertificate {
    /// Sorted vertex ids; removing them leaves an acyclic graph.
    pub vertices: Vec<Vertex>,
    /// No smaller feedback vertex set exists.
    pub minimum: bool,
    /// `|S| <= ceil(n / 2)`.
    pub within_half: bool,
    /// The input is an odd cycle of digons, where the minimum is `(n + 1) / 2`.
    pub odd_digon_cycle: bool,
    pub nodes: u64,
}

struct Masks {
    out: Vec<u64>,
    inc: Vec<u64>,
}

impl Masks {
    fn new<G: Adjacency>(g: &G) -> Self {
        let n = g.vertex_count();
        let mut out = vec![0u64; n];
        let mut inc = vec![0u64; n];
        for &(u, v) in g.arc_list() {
            out[u] |= 1 << v;
            inc[v] |= 1 << u;
        }
        Masks { out, inc }
    }

    /// Repeatedly drops vertices with no in- or out-neighbour among `alive`.
    fn trim(&self, mut alive: u64) -> u64 {
        loop {
            let mut next = alive;
            for v in bits(alive) {
                if self.out[v] & alive == 0 || self.inc[v] & alive == 0 {
                    next &= !(1 << v);
                }
            }
            if next == alive {
                return alive;
            }
            alive = next;
        }
    }

    /// A shortest cycle in the subgraph induced by `alive`, as vertices in order.
    fn shortest_cycle(&self, alive: u64) -> Option<Vec<Vertex>> {
        let mut best: Option<Vec<Vertex>> = None;
        for s in bits(alive) {
            let limit = best.as_ref().map_or(usize::MAX, |b| b.len());
            let mut parent = [usize::MAX; FVS_LIMIT];
            let mut seen = 1u64 << s;
            let mut frontier = vec![s];
            let mut depth = 1;
            'bfs: while !frontier.is_empty() && depth < limit {
                let mut next = Vec::new();
                for &u in &frontier {
                    if self.out[u] & (1 << s) != 0 {
                        let mut cycle = vec![u];
                        let mut v = u;
                        while v != s {
                            v = parent[v];
                            cycle.push(v);
                        }
                        cycle.reverse();
                        best = Some(cycle);
                        break 'bfs;
                    }
                    for w in bits(self.out[u] & alive & !seen) {
                        seen |= 1 << w;
                        parent[w] = u;
                        next.push(w);
                    }
                }
                frontier = next;
                depth += 1;
            }
            if best.as_ref().is_some_and(|b| b.len() == 2) {
                break;
            }
        }
        best
    }

    /// Vertex-disjoint cycles found greedily; a lower bound on any feedback vertex set.
    fn packing(&self, mut alive: u64) -> usize {
        let mut count = 0;
        loop {
            alive = self.trim(alive);
            match self.shortest_cycle(alive) {
                Some(c) => {
                    count += 1;
                    for v in c {
                        alive &= !(1 << v);
                    }
                }
                None => return count,
            }
        }
    }

    /// Branching candidates on `cycle`: a vertex whose only in-neighbour
    /// (or only out-neighbour) is alive lies on no cycle avoiding that
    /// neighbour, so it is replaced by the end of its chain of such
    /// neighbours.
    fn candidates(&self, alive: u64, cycle: &[Vertex]) -> Vec<Vertex> {
        let k = cycle.len();
        let dominator = |i: usize| -> Option<usize> {
            let v = cycle[i];
            if (self.inc[v] & alive).count_ones() == 1 {
                Some((i + k - 1) % k)
            } else if (self.out[v] & alive).count_ones() == 1 {
                Some((i + 1) % k)
            } else {
                None
            }
        };
        let mut out = Vec::new();
        for start in 0..k {
            let mut i = start;
            let mut visited = vec![false; k];
            while let Some(j) = dominator(i) {
                if visited[i] {
                    // `i` lies on a loop of mutually dominating vertices
                    let mut lowest = i;
                    let mut x = dominator(i).unwrap_or(i);
                    while x != i {
                        lowest = lowest.min(x);
                        x = dominator(x).unwrap_or(i);
                    }
                    i = lowest;
                    break;
                }
                visited[i] = true;
                i = j;
            }
            if !out.contains(&cycle[i]) {
                out.push(cycle[i]);
            }
        }
        out
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

struct Search<'a> {
    masks: &'a Masks,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn solve(&mut self, alive: u64, k: usize) -> Result<Option<u64>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let alive = self.masks.trim(alive);
        let Some(cycle) = self.masks.shortest_cycle(alive) else { return Ok(Some(0)) };
        if k == 0 || self.masks.packing(alive) > k {
            return Ok(None);
        }
        for v in self.masks.candidates(alive, &cycle) {
            if let Some(s) = self.solve(alive & !(1 << v), k - 1)? {
                return Ok(Some(s | 1 << v));
            }
        }
        Ok(None)
    }
}

/// Minimum feedback vertex set by search over increasing sizes.
pub fn fvs_exact<G: Adjacency>(g: &G, budget: u64) -> Result<FvsCertificate> {
    let n = g.vertex_count();
    if n > FVS_LIMIT {
        return Err(Error::TooLarge(format!("{n} vertices; exact feedback vertex search handles at most {FVS_LIMIT}")));
    }
    if let Some(&(u, _)) = g.arc_list().iter().find(|&&(u, v)| u == v) {
        return Err(Error::Precondition(format!("loop at vertex {u}")));
    }
    let masks = Masks::new(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search { masks: &masks, nodes: 0, budget };
    let mut k = masks.packing(all);
    let set = loop {
        if let Some(s) = search.solve(all, k)? {
            break s;
        }
        k += 1;
    };
    let vertices: Vec<Vertex> = bits(set).collect();
    Ok(FvsCertificate {
        within_half: 2 * vertices.len() <= n + 1,
        odd_digon_cycle: odd_digon_cycle(g).is_some(),
        minimum: true,
        nodes: search.nodes,
        vertices,
    })
}

/// True when deleting `set` leaves no directed cycle.
pub fn is_feedback_vertex_set<G: Adjacency>(g: &G, set: &[Vertex]) -> bool {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    for &v in set {
        gone[v] = true;
    }
    let mut indeg = vec![0usize; n];
    for &(u, v) in g.arc_list() {
        if !gone[u] && !gone[v] {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| !gone[v] && indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = stack.pop() {
        removed += 1;
        for &a in g.out_arc_ids(u) {
            let v = g.arc_list()[a].1;
            if !gone[v] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
    }
    removed + gone.iter().filter(|&&g| g).count() == n
}

/// The cyclic vertex order when `g` is an odd cycle of digons with no
/// parallel arcs.
pub fn odd_digon_cycle<G: Adjacency>(g: &G) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    if n < 3 || n.is_multiple_of(2) || g.arc_list().len() != 2 * n {
        return None;
    }
    let mut nbrs = vec![Vec::new(); n];
    for (v, slot) in nbrs.iter_mut().enumerate() {
        let mut outs: Vec<Vertex> = g.out_arc_ids(v).iter().map(|&a| g.arc_list()[a].1).collect();
        let mut ins: Vec<Vertex> = g.in_arc_ids(v).iter().map(|&a| g.arc_list()[a].0).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        if outs.len() != 2 || outs != ins || outs[0] == outs[1] {
            return None;
        }
        *slot = outs;
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = if nbrs[cur][0] != prev { nbrs[cur][0] } else { nbrs[cur][1] };
        if next == 0 {
            break;
        }
        if order.len() == n {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Recognises the split form of an odd digon cycle: pairs `v- -> v+` with
/// `v-` of out-degree 1 and `v+` of in-degree 1, every other arc running
/// from some `u+` to some `v-`, and contracting the pairs gives an odd
/// digon cycle. Returns the pairs in cycle order.
pub fn split_odd_digon_cycle(d: &Digraph) -> Option<Vec<(Vertex, Vertex)>> {
    let n = d.n();
    if n % 2 == 1 {
        return None;
    }
    let mut pair_of = vec![usize::MAX; n];
    let mut pairs = Vec::new();
    for v in 0..n {
        if d.out_degree(v) == 1 && d.in_degree(v) == 2 {
            let w = d.out_neighbors(v).next()?;
            if d.in_degree(w) != 1 || d.out_degree(w) != 2 || pair_of[w] != usize::MAX {
                return None;
            }
            pair_of[v] = pairs.len();
            pair_of[w] = pairs.len();
            pairs.push((v, w));
        }
    }
    if 2 * pairs.len() != n {
        return None;
    }
    let mut arcs = Vec::new();
    for &(u, v) in d.arcs() {
        let (pu, pv) = (pair_of[u], pair_of[v]);
        if pu == pv {
            continue;
        }
        if pairs[pu].1 != u || pairs[pv].0 != v {
            return None;
        }
        arcs.push((pu, pv));
    }
    let contracted = crate::graph::MultiDigraph::new(pairs.len(), arcs).ok()?;
    let order = odd_digon_cycle(&contracted)?;
    Some(order.into_iter().map(|i| pairs[i]).collect())
}

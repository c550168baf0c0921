//! Directed graphs with stable arc ids, plus the structural queries the rest
//! of the crate builds on: degrees, girth, strong components, cycle
//! enumeration and digon reduction.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArcId = usize;

/// Length of a shortest directed cycle. `Infinite` sorts after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Read access shared by [`Digraph`] and [`MultiDigraph`].
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn arc_list(&self) -> &[(Vertex, Vertex)];
    fn out_arc_ids(&self, v: Vertex) -> &[ArcId];
    fn in_arc_ids(&self, v: Vertex) -> &[ArcId];
}

fn build_incidence(n: usize, arcs: &[(Vertex, Vertex)]) -> (Vec<Vec<ArcId>>, Vec<Vec<ArcId>>) {
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (id, &(u, v)) in arcs.iter().enumerate() {
        out[u].push(id);
        inc[v].push(id);
    }
    (out, inc)
}

fn check_endpoints(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<()> {
    for (arc, &(u, v)) in arcs.iter().enumerate() {
        for vertex in [u, v] {
            if vertex >= n {
                return Err(Error::VertexOutOfRange { arc, vertex, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { arc, vertex: u });
        }
    }
    Ok(())
}

/// A loopless digraph without parallel arcs. Arc ids are indices into
/// [`Digraph::arcs`] and never change for the lifetime of the value.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    weights: Option<Vec<f64>>,
    out: Vec<Vec<ArcId>>,
    inc: Vec<Vec<ArcId>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        check_endpoints(n, &arcs)?;
        let mut seen = HashMap::with_capacity(arcs.len());
        for (arc, &(u, v)) in arcs.iter().enumerate() {
            if seen.insert((u, v), arc).is_some() {
                return Err(Error::DuplicateArc { arc, u, v });
            }
        }
        let (out, inc) = build_incidence(n, &arcs);
        Ok(Digraph { n, arcs, weights: None, out, inc })
    }

    pub fn with_weights(n: usize, arcs: Vec<(Vertex, Vertex)>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != arcs.len() {
            return Err(Error::WeightCount { expected: arcs.len(), got: weights.len() });
        }
        for (arc, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight { arc, weight: w });
            }
        }
        let mut d = Digraph::new(n, arcs)?;
        d.weights = Some(weights);
        Ok(d)
    }

    /// The same arcs with every weight dropped.
    pub fn unweighted(&self) -> Digraph {
        Digraph { weights: None, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> (Vertex, Vertex) {
        self.arcs[id]
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Weight of an arc; 1 for unweighted graphs.
    pub fn weight(&self, id: ArcId) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[id])
    }

    pub fn total_weight(&self) -> f64 {
        match &self.weights {
            Some(w) => w.iter().sum(),
            None => self.arcs.len() as f64,
        }
    }

    pub fn out_arcs(&self, v: Vertex) -> &[ArcId] {
        &self.out[v]
    }

    pub fn in_arcs(&self, v: Vertex) -> &[ArcId] {
        &self.inc[v]
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v].iter().map(move |&a| self.arcs[a].1)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inc[v].iter().map(move |&a| self.arcs[a].0)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inc[v].len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn arc_between(&self, u: Vertex, v: Vertex) -> Option<ArcId> {
        self.out[u].iter().copied().find(|&a| self.arcs[a].1 == v)
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arc_between(u, v).is_some()
    }

    /// True when no pair of opposite arcs exists.
    pub fn is_oriented(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| !self.has_arc(v, u))
    }

    /// Every arc reversed; arc ids and weights are preserved.
    pub fn converse(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
            weights: self.weights.clone(),
            out: self.inc.clone(),
            inc: self.out.clone(),
        }
    }

    /// The spanning subgraph keeping the arcs for which `keep` is true.
    /// Returns the new graph and, for each new arc, its id in `self`.
    pub fn filter_arcs(&self, keep: impl Fn(ArcId) -> bool) -> (Digraph, Vec<ArcId>) {
        let kept: Vec<ArcId> = (0..self.arcs.len()).filter(|&a| keep(a)).collect();
        let arcs = kept.iter().map(|&a| self.arcs[a]).collect::<Vec<_>>();
        let weights = self.weights.as_ref().map(|w| kept.iter().map(|&a| w[a]).collect());
        let (out, inc) = build_incidence(self.n, &arcs);
        (Digraph { n: self.n, arcs, weights, out, inc }, kept)
    }

    /// The subgraph induced by the vertices with `keep[v]`, renumbered in
    /// increasing order. Returns the graph, the old id of every new vertex,
    /// and the old id of every new arc.
    pub fn induced(&self, keep: &[bool]) -> (Digraph, Vec<Vertex>, Vec<ArcId>) {
        let mut new_id = vec![usize::MAX; self.n];
        let mut vertices = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = vertices.len();
                vertices.push(v);
            }
        }
        let mut arcs = Vec::new();
        let mut arc_map = Vec::new();
        for (a, &(u, v)) in self.arcs.iter().enumerate() {
            if keep[u] && keep[v] {
                arcs.push((new_id[u], new_id[v]));
                arc_map.push(a);
            }
        }
        let weights = self.weights.as_ref().map(|w| arc_map.iter().map(|&a| w[a]).collect());
        let (out, inc) = build_incidence(vertices.len(), &arcs);
        (Digraph { n: vertices.len(), arcs, weights, out, inc }, vertices, arc_map)
    }

    /// Girth as defined by shortest directed cycle; a digon has girth 2.
    pub fn girth(&self) -> Girth {
        girth_of(self)
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_some()
    }

    /// Cycles of length at most `max_len` (or all cycles when `None`), each
    /// listed once as a vertex sequence starting at its smallest vertex.
    /// Output is sorted lexicographically; at most `cap` cycles are returned.
    pub fn enumerate_cycles(&self, max_len: Option<usize>, cap: usize) -> CycleList {
        enumerate_cycles(self, max_len, cap)
    }

    /// Arc ids along a cycle given as a vertex sequence.
    pub fn cycle_arcs(&self, cycle: &[Vertex]) -> Option<Vec<ArcId>> {
        (0..cycle.len())
            .map(|i| self.arc_between(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect()
    }

    /// Removes every digon. Weighted: subtracts the smaller weight of each
    /// digon from both arcs and drops the arc that reaches zero. Unweighted:
    /// deletes both arcs. The extracted amount satisfies
    /// `fas(self) = extracted + fas(reduced)`.
    pub fn reduce_digons(&self) -> DigonReduction {
        let mut weight: Vec<f64> = (0..self.arcs.len()).map(|a| self.weight(a)).collect();
        let mut removed = vec![false; self.arcs.len()];
        let mut extracted = 0.0;
        for (a, &(u, v)) in self.arcs.iter().enumerate() {
            let Some(b) = self.arc_between(v, u) else { continue };
            if b < a {
                continue;
            }
            if self.is_weighted() {
                let m = weight[a].min(weight[b]);
                extracted += m;
                for x in [a, b] {
                    weight[x] -= m;
                    if weight[x] == 0.0 {
                        removed[x] = true;
                    }
                }
            } else {
                extracted += 1.0;
                removed[a] = true;
                removed[b] = true;
            }
        }
        let (mut graph, kept) = self.filter_arcs(|a| !removed[a]);
        if self.is_weighted() {
            graph.weights = Some(kept.iter().map(|&a| weight[a]).collect());
        }
        DigonReduction { graph, extracted, kept }
    }
}

impl Adjacency for Digraph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn arc_list(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }
    fn out_arc_ids(&self, v: Vertex) -> &[ArcId] {
        &self.out[v]
    }
    fn in_arc_ids(&self, v: Vertex) -> &[ArcId] {
        &self.inc[v]
    }
}

/// Result of [`Digraph::reduce_digons`].
#[derive(Debug, Clone)]
pub struct DigonReduction {
    pub graph: Digraph,
    pub extracted: f64,
    /// Original id of each arc of `graph`.
    pub kept: Vec<ArcId>,
}

/// Loopless directed multigraph: parallel arcs allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<ArcId>>,
    inc: Vec<Vec<ArcId>>,
}

impl MultiDigraph {
    pub fn new(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        check_endpoints(n, &arcs)?;
        let (out, inc) = build_incidence(n, &arcs);
        Ok(MultiDigraph { n, arcs, out, inc })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

impl From<&Digraph> for MultiDigraph {
    fn from(d: &Digraph) -> Self {
        MultiDigraph { n: d.n, arcs: d.arcs.clone(), out: d.out.clone(), inc: d.inc.clone() }
    }
}

impl Adjacency for MultiDigraph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn arc_list(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }
    fn out_arc_ids(&self, v: Vertex) -> &[ArcId] {
        &self.out[v]
    }
    fn in_arc_ids(&self, v: Vertex) -> &[ArcId] {
        &self.inc[v]
    }
}

/// A topological order, or `None` when the graph has a cycle.
pub fn topological_order<G: Adjacency>(g: &G) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let arcs = g.arc_list();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_arc_ids(v).len()).collect();
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &a in g.out_arc_ids(u) {
            let v = arcs[a].1;
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Arc ids of some directed cycle, in traversal order.
pub fn find_cycle<G: Adjacency>(g: &G) -> Option<Vec<ArcId>> {
    let n = g.vertex_count();
    let arcs = g.arc_list();
    // 0 = unvisited, 1 = on stack, 2 = finished
    let mut state = vec![0u8; n];
    let mut via: Vec<Option<ArcId>> = vec![None; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let outs = g.out_arc_ids(u);
            if *next < outs.len() {
                let a = outs[*next];
                *next += 1;
                let v = arcs[a].1;
                match state[v] {
                    0 => {
                        state[v] = 1;
                        via[v] = Some(a);
                        stack.push((v, 0));
                    }
                    1 => {
                        let mut cycle = vec![a];
                        let mut w = u;
                        while w != v {
                            let b = via[w].expect("vertex on stack has a parent arc");
                            cycle.push(b);
                            w = arcs[b].0;
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

pub fn girth_of<G: Adjacency>(g: &G) -> Girth {
    let n = g.vertex_count();
    let arcs = g.arc_list();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] + 1 >= best {
                break;
            }
            for &a in g.out_arc_ids(u) {
                let v = arcs[a].1;
                if v == s {
                    best = best.min(dist[u] + 1);
                } else if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Strong components in topological order of the condensation (a component
/// appears before every component it has arcs into). Vertices within a
/// component are sorted.
pub fn strong_components<G: Adjacency>(g: &G) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let arcs = g.arc_list();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(Vertex, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut next)) = call.last_mut() {
            let outs = g.out_arc_ids(u);
            if *next < outs.len() {
                let v = arcs[outs[*next]].1;
                *next += 1;
                if index[v] == usize::MAX {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("Tarjan stack holds the component");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

/// Components of the underlying undirected graph, each sorted, ordered by
/// smallest vertex.
pub fn weak_components<G: Adjacency>(g: &G) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let arcs = g.arc_list();
    let mut comp = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            let nbrs = g
                .out_arc_ids(u)
                .iter()
                .map(|&a| arcs[a].1)
                .chain(g.in_arc_ids(u).iter().map(|&a| arcs[a].0))
                .collect::<Vec<_>>();
            for v in nbrs {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Output of cycle enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleList {
    pub cycles: Vec<Vec<Vertex>>,
    /// Set when the cap stopped the enumeration early.
    pub truncated: bool,
}

fn enumerate_cycles(d: &Digraph, max_len: Option<usize>, cap: usize) -> CycleList {
    let n = d.n();
    let limit = max_len.unwrap_or(n).min(n);
    let sorted_out: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut w: Vec<Vertex> = d.out_neighbors(v).collect();
            w.sort_unstable();
            w
        })
        .collect();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        let mut cursor: Vec<usize> = vec![0];
        while let Some(&u) = path.last() {
            let depth = path.len() - 1;
            let nbrs = &sorted_out[u];
            if cursor[depth] < nbrs.len() {
                let v = nbrs[cursor[depth]];
                cursor[depth] += 1;
                if v == s {
                    if path.len() >= 2 {
                        if cycles.len() == cap {
                            on_path.iter_mut().for_each(|x| *x = false);
                            return CycleList { cycles, truncated: true };
                        }
                        cycles.push(path.clone());
                    }
                } else if v > s && !on_path[v] && path.len() < limit {
                    on_path[v] = true;
                    path.push(v);
                    cursor.push(0);
                }
            } else {
                on_path[u] = false;
                path.pop();
                cursor.pop();
            }
        }
    }
    CycleList { cycles, truncated: false }
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        check_endpoints(n, &edges)?;
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashMap::with_capacity(edges.len());
        for (arc, &(u, v)) in edges.iter().enumerate() {
            if seen.insert((u.min(v), u.max(v)), arc).is_some() {
                return Err(Error::DuplicateArc { arc, u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(UndirectedGraph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// A proper 2-coloring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].expect("pushed vertices are colored");
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    /// Orients every edge along closed trails so that each vertex gets
    /// in-degree equal to out-degree. Requires every degree to be even.
    pub fn eulerian_orient(&self) -> Result<Digraph> {
        if let Some(v) = (0..self.n).find(|&v| self.adj[v].len() % 2 == 1) {
            return Err(Error::Precondition(format!("vertex {v} has odd degree {}", self.adj[v].len())));
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        let mut used = vec![false; self.edges.len()];
        let mut cursor = vec![0usize; self.n];
        let mut arcs = Vec::with_capacity(self.edges.len());
        for start in 0..self.n {
            loop {
                while cursor[start] < incident[start].len() && used[incident[start][cursor[start]]] {
                    cursor[start] += 1;
                }
                if cursor[start] == incident[start].len() {
                    break;
                }
                // Walk a closed trail from `start`; even degrees force the
                // walk to end back at `start`.
                let mut cur = start;
                loop {
                    while cursor[cur] < incident[cur].len() && used[incident[cur][cursor[cur]]] {
                        cursor[cur] += 1;
                    }
                    if cursor[cur] == incident[cur].len() {
                        break;
                    }
                    let e = incident[cur][cursor[cur]];
                    used[e] = true;
                    let (a, b) = self.edges[e];
                    let next = if a == cur { b } else { a };
                    arcs.push((cur, next));
                    cur = next;
                }
            }
        }
        Digraph::new(self.n, arcs)
    }
}

//! Good `g`-arc-colorings of orgraphs with maximum degree 3 and girth at
//! least `g`, for `g` in `{3, 4, 5}`.
//!
//! The construction peels a shortest path from a vertex of in-degree 2 to
//! a vertex of out-degree 2, colors the rest recursively and extends. For
//! `g = 5` and a single arc `p1 -> p2` between the two classes the
//! extension needs a *special* coloring of `D* = D - {p1, p2}`, handled by
//! [`SpecialFrame`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fasd::{verify_good_coloring, ArcColoring};
use crate::graph::{strong_components, ArcId, Digraph, Girth, Vertex};

/// Vertices of a digraph with maximum degree 3, by `(d+, d-)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClasses {
    /// `d+ = 1, d- = 2`.
    pub x12: Vec<Vertex>,
    /// `d+ = 2, d- = 1`.
    pub x21: Vec<Vertex>,
    /// `d+ = d- = 1`.
    pub x11: Vec<Vertex>,
    /// Everything else (sources, sinks, isolated or high-degree vertices).
    pub other: Vec<Vertex>,
}

impl DegreeClasses {
    /// True when every vertex is in one of the three named classes.
    pub fn is_complete(&self) -> bool {
        self.other.is_empty()
    }
}

pub fn degree_classes(d: &Digraph) -> DegreeClasses {
    let mut c = DegreeClasses { x12: vec![], x21: vec![], x11: vec![], other: vec![] };
    for v in 0..d.n() {
        match (d.out_degree(v), d.in_degree(v)) {
            (1, 2) => c.x12.push(v),
            (2, 1) => c.x21.push(v),
            (1, 1) => c.x11.push(v),
            _ => c.other.push(v),
        }
    }
    c
}

/// One step of the construction, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEvent {
    /// Not strongly connected; the nontrivial strong components were colored separately.
    Split { components: usize },
    /// A single directed cycle colored round-robin.
    Cycle { length: usize },
    /// Shortest path with at least `g - 1` vertices.
    LongPath { vertices: usize, chord: bool },
    /// Shortest path with `g - 2` vertices; `relabel[c]` is the new name of color `c`.
    ShortPath { vertices: usize, case: ShortPathCase, relabel: Vec<u8> },
    /// `g = 5` with a single arc between the classes.
    Special { route: SpecialRoute },
}

/// Which in-neighbours of the path start have out-degree 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShortPathCase {
    Neither,
    Both,
    One,
}

/// How a special coloring of `D*` was completed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialRoute {
    /// The arcs into both in-neighbours of `p1` share a color.
    SharedInColor,
    /// The arcs out of both out-neighbours of `p2` share a color.
    SharedOutColor,
    /// An in-neighbour of `p1` has an arc to an out-neighbour of `p2`.
    CrossArc,
    /// Four distinct colors around `p1` and `p2`.
    FourColors,
    /// The step-by-step normalisation stalled; a search over the same
    /// recoloring moves found a completion after trying `combinations`.
    Enumerated { combinations: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRun {
    pub coloring: ArcColoring,
    pub trace: Vec<TraceEvent>,
}

/// Builds and verifies a good `g`-coloring.
pub fn good_g_coloring(d: &Digraph, g: usize) -> Result<ColoringRun> {
    if !(3..=5).contains(&g) {
        return Err(Error::Precondition(format!("g must be 3, 4 or 5, got {g}")));
    }
    if d.max_degree() > 3 {
        return Err(Error::Precondition(format!("maximum degree {} exceeds 3", d.max_degree())));
    }
    if let Girth::Finite(girth) = d.girth() {
        if girth < g {
            return Err(Error::Precondition(format!("girth {girth} is below {g}")));
        }
    }
    let mut b = Colorer { g, max_depth: d.n() + 1, trace: Vec::new() };
    let colors = b.solve(d, 0)?;
    let coloring = ArcColoring { t: g, colors: colors.into_iter().map(usize::from).collect() };
    verify_good_coloring(d, &coloring).map_err(|v| Error::InternalGap(format!("constructed coloring is not good: {v:?}")))?;
    Ok(ColoringRun { coloring, trace: b.trace })
}

struct Colorer {
    g: usize,
    max_depth: usize,
    trace: Vec<TraceEvent>,
}

/// Colors of `d`'s arcs, with the subgraph avoiding `removed` colored
/// recursively and every arc touching `removed` left at 0.
struct Partial {
    colors: Vec<u8>,
    inner: Vec<ArcId>,
}

impl Partial {
    fn relabel(&mut self, relabel: &[u8]) {
        for &a in &self.inner {
            self.colors[a] = relabel[self.colors[a] as usize];
        }
    }
}

fn arc(d: &Digraph, u: Vertex, v: Vertex) -> Result<ArcId> {
    d.arc_between(u, v).ok_or_else(|| Error::InternalGap(format!("expected arc {u} -> {v}")))
}

/// Relabeling sending `firsts[i]` to `i` (duplicates skipped), other colors
/// following in increasing order.
fn relabeling(t: usize, firsts: &[u8]) -> Vec<u8> {
    let mut order: Vec<u8> = Vec::with_capacity(t);
    for &c in firsts {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    for c in 0..t as u8 {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    let mut relabel = vec![0u8; t];
    for (new, &old) in order.iter().enumerate() {
        relabel[old as usize] = new as u8;
    }
    relabel
}

impl Colorer {
    fn solve(&mut self, d: &Digraph, depth: usize) -> Result<Vec<u8>> {
        if depth > self.max_depth {
            return Err(Error::InternalGap("recursion deeper than the vertex count".into()));
        }
        let mut colors = vec![0u8; d.arc_count()];
        if d.arc_count() == 0 {
            return Ok(colors);
        }
        let comps = strong_components(d);
        if comps.len() > 1 {
            let nontrivial: Vec<&Vec<Vertex>> = comps.iter().filter(|c| c.len() > 1).collect();
            self.trace.push(TraceEvent::Split { components: nontrivial.len() });
            for comp in nontrivial {
                let mut keep = vec![false; d.n()];
                for &v in comp {
                    keep[v] = true;
                }
                let (sub, _, arcs) = d.induced(&keep);
                let sc = self.solve(&sub, depth + 1)?;
                for (i, &a) in arcs.iter().enumerate() {
                    colors[a] = sc[i];
                }
            }
            return Ok(colors);
        }
        let classes = degree_classes(d);
        if !classes.is_complete() {
            return Err(Error::InternalGap(format!("strong component has vertex {} outside the degree classes", classes.other[0])));
        }
        if classes.x12.is_empty() {
            return Ok(self.color_cycle(d));
        }
        let path = shortest_path(d, &classes)?;
        let l = path.len();
        if l + 1 >= self.g {
            self.long_path(d, &path, depth)
        } else if l + 2 == self.g {
            self.short_path(d, &path, depth)
        } else if self.g == 5 && l == 2 {
            self.special(d, &path, depth)
        } else {
            Err(Error::InternalGap(format!("path with {l} vertices fits no case for g = {}", self.g)))
        }
    }

    fn color_cycle(&mut self, d: &Digraph) -> Vec<u8> {
        let mut colors = vec![0u8; d.arc_count()];
        let mut v = 0;
        for i in 0..d.arc_count() {
            let a = d.out_arcs(v)[0];
            colors[a] = (i % self.g) as u8;
            v = d.arc(a).1;
        }
        self.trace.push(TraceEvent::Cycle { length: d.arc_count() });
        colors
    }

    fn without(&mut self, d: &Digraph, removed: &[Vertex], depth: usize) -> Result<Partial> {
        let mut keep = vec![true; d.n()];
        for &v in removed {
            keep[v] = false;
        }
        let (sub, _, arcs) = d.induced(&keep);
        let sc = self.solve(&sub, depth + 1)?;
        let mut colors = vec![0u8; d.arc_count()];
        for (i, &a) in arcs.iter().enumerate() {
            colors[a] = sc[i];
        }
        Ok(Partial { colors, inner: arcs })
    }

    /// Arcs into `p1` get 0, the first `g - 2` path arcs get `1 .. g-2`,
    /// arcs out of the last vertex get `g - 1`.
    fn long_path(&mut self, d: &Digraph, p: &[Vertex], depth: usize) -> Result<Vec<u8>> {
        let g = self.g;
        let l = p.len();
        let chord = d.arc_between(p[l - 1], p[0]);
        self.trace.push(TraceEvent::LongPath { vertices: l, chord: chord.is_some() });
        let mut c = self.without(d, p, depth)?.colors;
        for &a in d.out_arcs(p[l - 1]) {
            c[a] = (g - 1) as u8;
        }
        for &a in d.in_arcs(p[0]) {
            c[a] = 0;
        }
        for k in 0..l - 1 {
            c[arc(d, p[k], p[k + 1])?] = if k + 2 < g { (k + 1) as u8 } else { 0 };
        }
        if chord.is_some() {
            c[arc(d, p[g - 2], p[g - 1])?] = (g - 1) as u8;
        }
        Ok(c)
    }

    /// Path with `g - 2` vertices; `w1, w2` are the in-neighbours of `p1`.
    fn short_path(&mut self, d: &Digraph, p: &[Vertex], depth: usize) -> Result<Vec<u8>> {
        let mut w: Vec<Vertex> = d.in_neighbors(p[0]).collect();
        w.sort_unstable();
        let split = |v: Vertex| d.out_degree(v) == 2;
        let (case, mut part, relabel) = match (split(w[0]), split(w[1])) {
            (false, false) => {
                let removed: Vec<Vertex> = w.iter().chain(p).copied().collect();
                let mut part = self.without(d, &removed, depth)?;
                for &x in &w {
                    for &a in d.in_arcs(x) {
                        part.colors[a] = 0;
                    }
                }
                (ShortPathCase::Neither, part, (0..self.g as u8).collect())
            }
            (true, true) => {
                let mut part = self.without(d, &p[..2], depth)?;
                let z = [d.in_arcs(w[0])[0], d.in_arcs(w[1])[0]];
                let relabel = relabeling(self.g, &[part.colors[z[0]], part.colors[z[1]]]);
                part.relabel(&relabel);
                (ShortPathCase::Both, part, relabel)
            }
            (first_split, _) => {
                if first_split {
                    w.swap(0, 1);
                }
                let removed: Vec<Vertex> = std::iter::once(w[0]).chain(p.iter().copied()).collect();
                let mut part = self.without(d, &removed, depth)?;
                let z = d.in_arcs(w[1])[0];
                let relabel = relabeling(self.g, &[part.colors[z]]);
                part.relabel(&relabel);
                for &a in d.in_arcs(w[0]) {
                    part.colors[a] = 0;
                }
                (ShortPathCase::One, part, relabel)
            }
        };
        let c = &mut part.colors;
        c[arc(d, w[0], p[0])?] = 1;
        c[arc(d, w[1], p[0])?] = 1;
        if case == ShortPathCase::Both {
            let z2 = d.in_arcs(w[1])[0];
            c[arc(d, w[1], p[0])?] = 1 - c[z2];
        }
        c[arc(d, p[0], p[1])?] = 2;
        for &a in d.out_arcs(p[1]) {
            c[a] = 3;
        }
        if p.len() == 3 {
            for &a in d.out_arcs(p[2]) {
                c[a] = 4;
            }
        }
        self.trace.push(TraceEvent::ShortPath { vertices: p.len(), case, relabel });
        Ok(part.colors)
    }

    fn special(&mut self, d: &Digraph, p: &[Vertex], depth: usize) -> Result<Vec<u8>> {
        let (p1, p2) = (p[0], p[1]);
        let mut keep = vec![true; d.n()];
        keep[p1] = false;
        keep[p2] = false;
        let (sub, vmap, arcs) = d.induced(&keep);
        let mut sc = self.solve(&sub, depth + 1)?;
        let local = |v: Vertex| vmap.binary_search(&v).expect("neighbour survives in D*");
        let mut w: Vec<Vertex> = d.in_neighbors(p1).collect();
        let mut q: Vec<Vertex> = d.out_neighbors(p2).collect();
        w.sort_unstable();
        q.sort_unstable();
        let frame = SpecialFrame::new(&sub, [local(w[0]), local(w[1])], [local(q[0]), local(q[1])])?;
        let (bridge, route) = frame.complete(&mut sc)?;
        let mut c = vec![0u8; d.arc_count()];
        for (i, &a) in arcs.iter().enumerate() {
            c[a] = sc[i];
        }
        for (x, col) in bridge.into_p1 {
            c[arc(d, vmap[x], p1)?] = col;
        }
        c[arc(d, p1, p2)?] = bridge.middle;
        for (x, col) in bridge.out_of_p2 {
            c[arc(d, p2, vmap[x])?] = col;
        }
        self.trace.push(TraceEvent::Special { route });
        Ok(c)
    }
}

/// Shortest path from a vertex of class `x12` to one of class `x21`.
fn shortest_path(d: &Digraph, classes: &DegreeClasses) -> Result<Vec<Vertex>> {
    let mut target = vec![false; d.n()];
    for &v in &classes.x21 {
        target[v] = true;
    }
    let mut parent = vec![usize::MAX; d.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in &classes.x12 {
        parent[s] = s;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if target[u] {
            let mut path = vec![u];
            let mut v = u;
            while parent[v] != v {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            return Ok(path);
        }
        for w in d.out_neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    Err(Error::InternalGap("no path between the degree classes in a strong component".into()))
}

/// Number of colors in a special coloring.
pub const SPECIAL_COLORS: u8 = 5;

/// Colors of an arc set: empty, a single color, or several.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mono {
    Empty,
    One(u8),
    Mixed,
}

/// Colors for the five arcs at `p1` and `p2`, keyed by the `D*` vertex at
/// the other end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub into_p1: [(Vertex, u8); 2],
    pub middle: u8,
    pub out_of_p2: [(Vertex, u8); 2],
}

/// `D*` with the in-neighbours `w` of `p1` and the out-neighbours `q` of
/// `p2`. A 5-coloring of `D*` is *special* when it is good and, for every
/// `x` in `WQ = w ∪ q`, the arcs into `x` share one color and the arcs out
/// of `x` share one color. With `flip` set, every method reads the converse
/// graph, exchanging the roles of `w` and `q`.
#[derive(Debug, Clone)]
pub struct SpecialFrame<'a> {
    d: &'a Digraph,
    w: [Vertex; 2],
    q: [Vertex; 2],
    on_cycle: Vec<bool>,
    flip: bool,
}

enum Step {
    Done(Bridge),
    ToShared { out_side: bool },
}

fn fresh(avoid: &[Mono]) -> u8 {
    (0..SPECIAL_COLORS).find(|c| !avoid.contains(&Mono::One(*c))).expect("at most four colors avoided")
}

impl<'a> SpecialFrame<'a> {
    pub fn new(d: &'a Digraph, w: [Vertex; 2], q: [Vertex; 2]) -> Result<Self> {
        let wq = [w[0], w[1], q[0], q[1]];
        if wq.iter().any(|&x| x >= d.n()) || (1..4).any(|i| wq[..i].contains(&wq[i])) {
            return Err(Error::Precondition(format!("WQ = {wq:?} must be four distinct vertices")));
        }
        let mut on_cycle = vec![false; d.n()];
        for comp in strong_components(d) {
            if comp.len() > 1 {
                for v in comp {
                    on_cycle[v] = true;
                }
            }
        }
        Ok(SpecialFrame { d, w, q, on_cycle, flip: false })
    }

    fn flipped(&self) -> Self {
        SpecialFrame { flip: !self.flip, ..self.clone() }
    }

    fn ws(&self) -> [Vertex; 2] {
        if self.flip { self.q } else { self.w }
    }

    fn qs(&self) -> [Vertex; 2] {
        if self.flip { self.w } else { self.q }
    }

    fn wq(&self) -> [Vertex; 4] {
        [self.w[0], self.w[1], self.q[0], self.q[1]]
    }

    /// Arcs into `x` as seen by this frame.
    pub fn arcs_in(&self, x: Vertex) -> &'a [ArcId] {
        if self.flip { self.d.out_arcs(x) } else { self.d.in_arcs(x) }
    }

    pub fn arcs_out(&self, x: Vertex) -> &'a [ArcId] {
        if self.flip { self.d.in_arcs(x) } else { self.d.out_arcs(x) }
    }

    fn frame_arc(&self, u: Vertex, v: Vertex) -> Option<ArcId> {
        if self.flip { self.d.arc_between(v, u) } else { self.d.arc_between(u, v) }
    }

    pub fn mono(&self, c: &[u8], arcs: &[ArcId]) -> Mono {
        match arcs.split_first() {
            None => Mono::Empty,
            Some((&a, rest)) if rest.iter().all(|&b| c[b] == c[a]) => Mono::One(c[a]),
            Some(_) => Mono::Mixed,
        }
    }

    fn in_color(&self, c: &[u8], x: Vertex) -> Mono {
        self.mono(c, self.arcs_in(x))
    }

    fn out_color(&self, c: &[u8], x: Vertex) -> Mono {
        self.mono(c, self.arcs_out(x))
    }

    pub fn is_special(&self, c: &[u8]) -> bool {
        let good = verify_good_coloring(
            self.d,
            &ArcColoring { t: SPECIAL_COLORS as usize, colors: c.iter().map(|&x| x as usize).collect() },
        )
        .is_ok();
        good && self.wq().iter().all(|&x| self.in_color(c, x) != Mono::Mixed && self.out_color(c, x) != Mono::Mixed)
    }

    /// Recolors every arc at a `WQ` vertex that lies on no cycle with color 0.
    pub fn make_special(&self, c: &mut [u8]) {
        for x in self.wq() {
            if !self.on_cycle[x] {
                for &a in self.d.in_arcs(x).iter().chain(self.d.out_arcs(x)) {
                    c[a] = 0;
                }
            }
        }
    }

    /// Exchanges the colors of the single arc into and the single arc out of `x`.
    pub fn swap_in_out(&self, c: &mut [u8], x: Vertex) -> Result<()> {
        match (self.d.in_arcs(x), self.d.out_arcs(x)) {
            ([a], [b]) => {
                c.swap(*a, *b);
                Ok(())
            }
            _ => Err(Error::Precondition(format!("vertex {x} needs exactly one arc in and one out"))),
        }
    }

    fn path_arcs(&self, path: &[Vertex]) -> Result<Vec<ArcId>> {
        let wq = self.wq();
        if path.len() < 2 || wq.contains(&path[0]) || wq.contains(&path[path.len() - 1]) {
            return Err(Error::Precondition("path must have two ends outside WQ".into()));
        }
        if path[1..path.len() - 1].iter().any(|&r| self.d.in_degree(r) != 1 || self.d.out_degree(r) != 1) {
            return Err(Error::Precondition("inner path vertices need one arc in and one out".into()));
        }
        path.windows(2)
            .map(|e| self.d.arc_between(e[0], e[1]).ok_or_else(|| Error::Precondition(format!("no arc {} -> {}", e[0], e[1]))))
            .collect()
    }

    /// Rearranges the colors along a path whose inner vertices have one arc
    /// in and one out: arc `i` takes the old color of arc `order[i]`.
    pub fn permute_path_colors(&self, c: &mut [u8], path: &[Vertex], order: &[usize]) -> Result<()> {
        let arcs = self.path_arcs(path)?;
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..arcs.len()).collect::<Vec<_>>() {
            return Err(Error::Precondition("order must permute the path arcs".into()));
        }
        let old: Vec<u8> = arcs.iter().map(|&a| c[a]).collect();
        for (i, &a) in arcs.iter().enumerate() {
            c[a] = old[order[i]];
        }
        Ok(())
    }

    /// Recolors path arc `index`, whose color appears on another arc of the path.
    pub fn recolor_repeated(&self, c: &mut [u8], path: &[Vertex], index: usize, color: u8) -> Result<()> {
        let arcs = self.path_arcs(path)?;
        let a = *arcs.get(index).ok_or_else(|| Error::Precondition("index outside the path".into()))?;
        if !arcs.iter().any(|&b| b != a && c[b] == c[a]) || color >= SPECIAL_COLORS {
            return Err(Error::Precondition("only a repeated color may be replaced".into()));
        }
        c[a] = color;
        Ok(())
    }

    /// Makes the arcs out of `q` avoid `bad`: swap through `q` when it has
    /// one arc in, otherwise recolor its arcs out (they lie on no cycle).
    fn push_out_color_away(&self, c: &mut [u8], q: Vertex, bad: u8, avoid: &[Mono]) {
        if self.out_color(c, q) != Mono::One(bad) {
            return;
        }
        let (ins, outs) = (self.arcs_in(q), self.arcs_out(q));
        let mut avoid = avoid.to_vec();
        avoid.push(Mono::One(bad));
        if let ([a], [b]) = (ins, outs) {
            c.swap(*a, *b);
            if c[*b] == bad {
                c[*b] = fresh(&avoid);
            }
        } else if ins.is_empty() {
            let col = fresh(&avoid);
            for &b in outs {
                c[b] = col;
            }
        }
    }

    fn unflip(&self, b: Bridge) -> Bridge {
        if self.flip {
            Bridge { into_p1: b.out_of_p2, middle: b.middle, out_of_p2: b.into_p1 }
        } else {
            b
        }
    }

    /// Completion when every arc into `w1`, `w2` (other than one between
    /// them) has color `c1` and the arcs out of each `q` are monochromatic
    /// and avoid `c1`.
    fn check_shared(&self, c: &[u8]) -> Option<Bridge> {
        let [w1, w2] = self.ws();
        let [q1, q2] = self.qs();
        let inner = |a: ArcId| {
            let (u, v) = self.d.arc(a);
            [w1, w2].contains(&u) && [w1, w2].contains(&v)
        };
        let outer: Vec<ArcId> = self.arcs_in(w1).iter().chain(self.arcs_in(w2)).copied().filter(|&a| !inner(a)).collect();
        let Mono::One(c1) = self.mono(c, &outer) else { return None };
        let (Mono::One(o1), Mono::One(o2)) = (self.out_color(c, q1), self.out_color(c, q2)) else { return None };
        if o1 == c1 || o2 == c1 {
            return None;
        }
        let rest: Vec<u8> = (0..SPECIAL_COLORS).filter(|x| ![c1, o1, o2].contains(x)).collect();
        let b = if o1 == o2 {
            Bridge { into_p1: [(w1, rest[0]), (w2, rest[0])], middle: rest[1], out_of_p2: [(q1, rest[2]), (q2, rest[2])] }
        } else {
            Bridge { into_p1: [(w1, rest[0]), (w2, rest[0])], middle: rest[1], out_of_p2: [(q1, o2), (q2, o1)] }
        };
        Some(self.unflip(b))
    }

    /// The shared-color completion, preparing the coloring first: an arc
    /// between `w1` and `w2` lets the far one take the near one's color,
    /// and each `q` is pushed off that color.
    fn route_shared(&self, c: &mut [u8]) -> Option<Bridge> {
        let [w1, w2] = self.ws();
        let adjacent = if self.frame_arc(w1, w2).is_some() {
            Some((w1, w2))
        } else if self.frame_arc(w2, w1).is_some() {
            Some((w2, w1))
        } else {
            None
        };
        let c1 = match adjacent {
            Some((near, far)) => {
                let Mono::One(c1) = self.in_color(c, near) else { return None };
                if self.arcs_out(far).is_empty() {
                    for &a in self.arcs_in(far) {
                        c[a] = c1;
                    }
                }
                c1
            }
            None => match (self.in_color(c, w1), self.in_color(c, w2)) {
                (Mono::One(x), Mono::One(y)) if x == y => x,
                _ => return None,
            },
        };
        let [mut q1, mut q2] = self.qs();
        if self.frame_arc(q1, q2).is_some() {
            std::mem::swap(&mut q1, &mut q2);
        }
        for q in [q1, q2] {
            self.push_out_color_away(c, q, c1, &[]);
        }
        self.check_shared(c)
    }

    /// Completion through an arc `w_a -> q_b`, using the path `s1 w_a q_b s2`.
    fn route_cross(&self, c: &mut [u8]) -> Option<Step> {
        for a in 0..2 {
            for b in 0..2 {
                let (wa, qb, wo, qo) = (self.w[a], self.q[b], self.w[1 - a], self.q[1 - b]);
                let Some(mid) = self.frame_arc(wa, qb) else { continue };
                let (&[r1], &[r3]) = (self.arcs_in(wa), self.arcs_out(qb)) else { continue };
                let r = [r1, mid, r3];
                for i in 1..3 {
                    if r[..i].iter().any(|&x| c[x] == c[r[i]]) {
                        let used: Vec<Mono> = r.iter().map(|&x| Mono::One(c[x])).collect();
                        c[r[i]] = fresh(&used);
                    }
                }
                let Mono::One(c4) = self.in_color(c, wo) else { return None };
                if let Some(k) = r.iter().position(|&x| c[x] == c4) {
                    c.swap(r[0], r[k]);
                    return Some(Step::ToShared { out_side: false });
                }
                let used: Vec<Mono> = r.iter().map(|&x| Mono::One(c[x])).collect();
                self.push_out_color_away(c, qo, c4, &used);
                let Mono::One(c5) = self.out_color(c, qo) else { return None };
                if c5 == c4 {
                    return None;
                }
                if let Some(k) = r.iter().position(|&x| c[x] == c5) {
                    c.swap(r[2], r[k]);
                    return Some(Step::ToShared { out_side: true });
                }
                return Some(Step::Done(Bridge {
                    into_p1: [(wa, c4), (wo, c[r[0]])],
                    middle: c[r[1]],
                    out_of_p2: [(qb, c5), (qo, c[r[2]])],
                }));
            }
        }
        None
    }

    /// Brings a special coloring into the four-color normal form: colors
    /// into and out of each `WQ` vertex differ, the four colors around the
    /// `w` side are distinct, likewise around the `q` side, and the colors
    /// into `w1`, `w2` and out of `q1`, `q2` are pairwise distinct.
    /// Returns `Ok(None)` when it reaches the normal form and
    /// `Ok(Some(side))` when it instead produced a shared color on the `w`
    /// side (`false`) or the `q` side (`true`).
    pub fn normalize_distinct(&self, c: &mut [u8]) -> Result<Option<bool>> {
        if self.flip {
            return Err(Error::Precondition("normalisation runs on the unflipped frame".into()));
        }
        let [w1, w2] = self.w;
        let [q1, q2] = self.q;
        for (x, other) in [(w1, w2), (w2, w1)] {
            if let ([a], [b]) = (self.d.in_arcs(x), self.d.out_arcs(x)) {
                if c[*a] == c[*b] {
                    let avoid = [self.in_color(c, w1), self.in_color(c, w2), self.out_color(c, other), Mono::One(c[*a])];
                    c[*b] = fresh(&avoid);
                }
            }
        }
        for (x, other) in [(q1, q2), (q2, q1)] {
            if let ([a], [b]) = (self.d.in_arcs(x), self.d.out_arcs(x)) {
                if c[*a] == c[*b] {
                    let avoid = [self.out_color(c, q1), self.out_color(c, q2), self.in_color(c, other), Mono::One(c[*b])];
                    c[*a] = fresh(&avoid);
                }
            }
        }
        for (frame, side) in [(self.clone(), false), (self.flipped(), true)] {
            let [x1, x2] = frame.ws();
            let cols = [frame.in_color(c, x1), frame.in_color(c, x2), frame.out_color(c, x1), frame.out_color(c, x2)];
            if distinct_defined(&cols) {
                continue;
            }
            let swappable = |x: Vertex| matches!((frame.arcs_in(x), frame.arcs_out(x)), ([_], [_]));
            for (s1, s2) in [(true, false), (false, true), (true, true)] {
                if (s1 && !swappable(x1)) || (s2 && !swappable(x2)) {
                    continue;
                }
                let after1 = if s1 { cols[2] } else { cols[0] };
                let after2 = if s2 { cols[3] } else { cols[1] };
                if after1 == after2 && matches!(after1, Mono::One(_)) {
                    for (s, x) in [(s1, x1), (s2, x2)] {
                        if s {
                            self.swap_in_out(c, x)?;
                        }
                    }
                    return Ok(Some(side));
                }
            }
            return Err(Error::InternalGap(format!("colors around {x1}, {x2} repeat without a shared-color swap")));
        }
        let cross = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).find(|&(i, j)| {
            matches!(self.in_color(c, self.w[i]), Mono::One(_)) && self.in_color(c, self.w[i]) == self.out_color(c, self.q[j])
        });
        if let Some((i, j)) = cross {
            let (w1, w2, q1, q2) = (self.w[i], self.w[1 - i], self.q[j], self.q[1 - j]);
            if self.d.in_arcs(q1).len() == 1 {
                self.swap_in_out(c, q1)?;
            } else {
                let col = fresh(&[self.in_color(c, w1), self.in_color(c, w2), self.in_color(c, q2), self.out_color(c, q2)]);
                for &a in self.d.out_arcs(q1) {
                    c[a] = col;
                }
            }
            if self.in_color(c, w2) == self.out_color(c, q1) {
                if self.d.out_arcs(w2).len() == 1 {
                    self.swap_in_out(c, w2)?;
                } else {
                    let col = fresh(&[self.out_color(c, q1), self.out_color(c, q2), self.in_color(c, w1), self.out_color(c, w1)]);
                    for &a in self.d.in_arcs(w2) {
                        c[a] = col;
                    }
                }
            }
            if self.in_color(c, w2) == self.out_color(c, q2) {
                if self.d.in_arcs(q2).len() == 1 {
                    self.swap_in_out(c, q2)?;
                } else {
                    let col = fresh(&[self.out_color(c, q1), self.in_color(c, w1), self.in_color(c, w2), self.in_color(c, q1)]);
                    for &a in self.d.out_arcs(q2) {
                        c[a] = col;
                    }
                }
            }
        }
        let four = [self.in_color(c, w1), self.in_color(c, w2), self.out_color(c, q1), self.out_color(c, q2)];
        if four.iter().all(|m| matches!(m, Mono::One(_))) && distinct_defined(&four) {
            Ok(None)
        } else {
            Err(Error::InternalGap(format!("normal form not reached: {four:?}")))
        }
    }

    fn check_four(&self, c: &[u8]) -> Option<Bridge> {
        let [w1, w2] = self.w;
        let [q1, q2] = self.q;
        let four = [self.in_color(c, w1), self.in_color(c, w2), self.out_color(c, q1), self.out_color(c, q2)];
        let [Mono::One(a), Mono::One(b), Mono::One(x), Mono::One(y)] = four else { return None };
        if !distinct_defined(&four) {
            return None;
        }
        Some(Bridge { into_p1: [(w1, b), (w2, a)], middle: fresh(&four), out_of_p2: [(q1, y), (q2, x)] })
    }

    fn check_any(&self, c: &[u8]) -> Option<Bridge> {
        self.check_shared(c).or_else(|| self.flipped().check_shared(c)).or_else(|| self.check_four(c))
    }

    /// Turns a good coloring of `D*` into a special one and completes it to
    /// the five arcs at `p1` and `p2`. The caller verifies the result.
    pub fn complete(&self, c: &mut [u8]) -> Result<(Bridge, SpecialRoute)> {
        self.make_special(c);
        let base = c.to_vec();
        if let Some(b) = self.route_path(c) {
            return Ok(b);
        }
        c.copy_from_slice(&base);
        self.enumerate(c)
    }

    fn route_path(&self, c: &mut [u8]) -> Option<(Bridge, SpecialRoute)> {
        let shared = |c: &mut [u8], out_side: bool| {
            let frame = if out_side { self.flipped() } else { self.clone() };
            let route = if out_side { SpecialRoute::SharedOutColor } else { SpecialRoute::SharedInColor };
            frame.route_shared(c).map(|b| (b, route))
        };
        let base = c.to_vec();
        for out_side in [false, true] {
            if let Some(r) = shared(c, out_side) {
                return Some(r);
            }
            c.copy_from_slice(&base);
        }
        match self.route_cross(c) {
            Some(Step::Done(b)) => return Some((b, SpecialRoute::CrossArc)),
            Some(Step::ToShared { out_side }) => return shared(c, out_side),
            None => c.copy_from_slice(&base),
        }
        match self.normalize_distinct(c) {
            Ok(None) => self.check_four(c).map(|b| (b, SpecialRoute::FourColors)),
            Ok(Some(out_side)) => shared(c, out_side),
            Err(_) => None,
        }
    }

    /// Tries every combination of the recoloring moves at the four `WQ`
    /// vertices: swapping or keeping the colors through a vertex with one
    /// arc in and one out, replacing a repeated color there, and freely
    /// recoloring the arcs at a vertex on no cycle.
    fn enumerate(&self, c: &mut [u8]) -> Result<(Bridge, SpecialRoute)> {
        #[derive(Clone, Copy)]
        enum Move {
            Keep,
            Swap,
            SetIn(u8),
            SetOut(u8),
            SetBoth(Option<u8>, Option<u8>),
        }
        let wq = self.wq();
        let colors = 0..SPECIAL_COLORS;
        let moves: Vec<Vec<Move>> = wq
            .iter()
            .map(|&x| {
                let (ins, outs) = (self.d.in_arcs(x), self.d.out_arcs(x));
                let mut m = vec![Move::Keep];
                if !self.on_cycle[x] {
                    let side = |arcs: &[ArcId]| -> Vec<Option<u8>> {
                        if arcs.is_empty() { vec![None] } else { colors.clone().map(Some).collect() }
                    };
                    for a in side(ins) {
                        for b in side(outs) {
                            m.push(Move::SetBoth(a, b));
                        }
                    }
                } else if ins.len() == 1 && outs.len() == 1 {
                    m.push(Move::Swap);
                    m.extend(colors.clone().map(Move::SetIn));
                    m.extend(colors.clone().map(Move::SetOut));
                }
                m
            })
            .collect();
        let base = c.to_vec();
        let mut idx = [0usize; 4];
        let mut tried = 0u64;
        loop {
            tried += 1;
            c.copy_from_slice(&base);
            let mut valid = true;
            for (k, &x) in wq.iter().enumerate() {
                let (ins, outs) = (self.d.in_arcs(x), self.d.out_arcs(x));
                match moves[k][idx[k]] {
                    Move::Keep => {}
                    Move::Swap => c.swap(ins[0], outs[0]),
                    Move::SetIn(col) | Move::SetOut(col) if c[ins[0]] != c[outs[0]] => {
                        let _ = col;
                        valid = false;
                    }
                    Move::SetIn(col) => c[ins[0]] = col,
                    Move::SetOut(col) => c[outs[0]] = col,
                    Move::SetBoth(a, b) => {
                        for (arcs, col) in [(ins, a), (outs, b)] {
                            if let Some(col) = col {
                                for &e in arcs {
                                    c[e] = col;
                                }
                            }
                        }
                    }
                }
            }
            if valid {
                if let Some(b) = self.check_any(c) {
                    return Ok((b, SpecialRoute::Enumerated { combinations: tried }));
                }
            }
            let mut k = 0;
            while k < 4 && idx[k] + 1 == moves[k].len() {
                idx[k] = 0;
                k += 1;
            }
            if k == 4 {
                break;
            }
            idx[k] += 1;
        }
        Err(Error::InternalGap(format!("no completion of the special coloring after {tried} combinations")))
    }
}

fn distinct_defined(cols: &[Mono]) -> bool {
    let ones: Vec<u8> = cols.iter().filter_map(|m| if let Mono::One(x) = m { Some(*x) } else { None }).collect();
    (1..ones.len()).all(|i| !ones[..i].contains(&ones[i]))
}

//! Partition of the arcs of an orgraph with maximum degree 4 into three
//! feedback arc sets, presented as three vertex orderings in which every
//! arc is backward exactly once.
//!
//! Terminology: for a vertex `v`, a *`v`-triple* is a good triple whose
//! first ordering starts with `v` and whose second ordering ends with `v`.
//! A vertex is *unbalanced* when `min(d+, d-) <= 1`. Every construction
//! below works inside an induced subgraph selected by an `alive` mask and,
//! where convenient, on the converse graph via a `flip` flag: a good triple
//! `(a, b, c)` of the converse yields the good triple `(b^R, a^R, c^R)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{weak_components, ArcId, Digraph, Vertex};
use crate::ordering::{backward_arcs, verify_good_triple, Triple};

/// Which construction handled a connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentCase {
    /// Some vertex is unbalanced.
    Unbalanced,
    /// 2-in 2-out with a transitive triangle.
    TransitiveTriangle,
    /// 2-in 2-out without transitive triangles: delete a vertex and rebuild
    /// along anti-directed paths.
    VertexRemoval(RemovalCase),
}

/// Branch taken by the vertex-removal construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RemovalCase {
    /// The path from the second in-neighbour could not be extended.
    Maximal,
    /// The path reached the other in-neighbour.
    ReachedIn,
    /// The path reached an out-neighbour through an arc into it.
    ReachedOutForward,
    /// The path reached an out-neighbour that has no further out-arcs.
    ReachedOutDeadEnd,
    /// A second path from the out-neighbour ended without reaching a target.
    SecondPathMaximal,
    /// A second path from the out-neighbour reached a target.
    SecondPathReached,
}

/// A good triple together with its three backward-arc classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub triple: Triple,
    /// `classes[i]` = arcs backward in ordering `i`.
    pub classes: [Vec<ArcId>; 3],
    pub cases: Vec<ComponentCase>,
}

/// Computes the three-way partition. Fails on digons or degree above 4.
pub fn decompose3(h: &Digraph) -> Result<Decomposition> {
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) > 4) {
        return Err(Error::Precondition(format!("vertex {v} has degree {} > 4", h.degree(v))));
    }
    if let Some(a) = (0..h.arc_count()).find(|&a| {
        let (u, v) = h.arc(a);
        h.has_arc(v, u)
    }) {
        return Err(Error::Precondition(format!("arc {a} lies on a digon")));
    }
    let b = Builder { d: h };
    let mut alive = vec![false; h.n()];
    let mut orders: [Vec<Vertex>; 3] = Default::default();
    let mut cases = Vec::new();
    for comp in weak_components(h) {
        for &v in &comp {
            alive[v] = true;
        }
        let (t, case) = b.component(&mut alive, &comp)?;
        for &v in &comp {
            alive[v] = false;
        }
        for (o, part) in orders.iter_mut().zip(t.0) {
            o.extend(part);
        }
        cases.push(case);
    }
    let triple = Triple(orders);
    verify_good_triple(h, &triple).map_err(|e| Error::InternalGap(format!("triple failed verification: {e:?}")))?;
    let classes = [0, 1, 2].map(|i| backward_arcs(h, &triple.0[i]).expect("verified permutation"));
    Ok(Decomposition { triple, classes, cases })
}

/// Inserts `x` into `order` at the first position with every in-neighbour
/// of `x` before it and every out-neighbour after it. Neighbours missing
/// from `order` are ignored.
pub fn insert_no_backward(d: &Digraph, order: &[Vertex], x: Vertex) -> Result<Vec<Vertex>> {
    let pos: Vec<Option<usize>> = {
        let mut p = vec![None; d.n()];
        for (i, &v) in order.iter().enumerate() {
            p[v] = Some(i);
        }
        p
    };
    let lo = d.in_neighbors(x).filter_map(|u| pos[u]).map(|p| p + 1).max().unwrap_or(0);
    let hi = d.out_neighbors(x).filter_map(|w| pos[w]).min().unwrap_or(order.len());
    if lo > hi {
        return Err(Error::InternalGap(format!("no position for vertex {x} avoids backward arcs")));
    }
    let mut out = order.to_vec();
    out.insert(lo, x);
    Ok(out)
}

fn prepend(x: Vertex, mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.insert(0, x);
    v
}

fn append(mut v: Vec<Vertex>, x: Vertex) -> Vec<Vertex> {
    v.push(x);
    v
}

fn insert_after(mut v: Vec<Vertex>, anchor: Vertex, x: Vertex) -> Result<Vec<Vertex>> {
    let i = v.iter().position(|&y| y == anchor).ok_or_else(|| gap(format!("{anchor} missing from ordering")))?;
    v.insert(i + 1, x);
    Ok(v)
}

fn insert_before(mut v: Vec<Vertex>, anchor: Vertex, x: Vertex) -> Result<Vec<Vertex>> {
    let i = v.iter().position(|&y| y == anchor).ok_or_else(|| gap(format!("{anchor} missing from ordering")))?;
    v.insert(i, x);
    Ok(v)
}

fn gap(msg: String) -> Error {
    Error::InternalGap(msg)
}

/// Which requirement the anti-directed extension must meet: the chosen
/// ordering survives as a subsequence of the first (`First`) or the second
/// (`Second`) ordering of the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Keep {
    First,
    Second,
}

impl Keep {
    fn flipped(self) -> Keep {
        match self {
            Keep::First => Keep::Second,
            Keep::Second => Keep::First,
        }
    }
}

struct Builder<'a> {
    d: &'a Digraph,
}

enum Level {
    Flip,
    Source(Vertex),
    Pendant { v: Vertex, u: Vertex },
}

impl Builder<'_> {
    fn outs(&self, alive: &[bool], flip: bool, v: Vertex) -> Vec<Vertex> {
        let it: Box<dyn Iterator<Item = Vertex>> =
            if flip { Box::new(self.d.in_neighbors(v)) } else { Box::new(self.d.out_neighbors(v)) };
        let mut w: Vec<Vertex> = it.filter(|&u| alive[u]).collect();
        w.sort_unstable();
        w
    }

    fn ins(&self, alive: &[bool], flip: bool, v: Vertex) -> Vec<Vertex> {
        self.outs(alive, !flip, v)
    }

    fn unbalanced(&self, alive: &[bool], v: Vertex) -> bool {
        self.outs(alive, false, v).len().min(self.ins(alive, false, v).len()) <= 1
    }

    fn component(&self, alive: &mut [bool], comp: &[Vertex]) -> Result<(Triple, ComponentCase)> {
        if let Some(&v) = comp.iter().find(|&&v| self.unbalanced(alive, v)) {
            return Ok((self.nonregular(alive, v)?, ComponentCase::Unbalanced));
        }
        for &x in comp {
            let ins = self.ins(alive, false, x);
            for &a in &ins {
                for &b in &ins {
                    if self.d.has_arc(a, b) {
                        return Ok((self.transitive(alive, a, b, x)?, ComponentCase::TransitiveTriangle));
                    }
                }
            }
        }
        let (t, case) = self.vertex_removal(alive, comp[0])?;
        Ok((t, ComponentCase::VertexRemoval(case)))
    }

    /// A `v`-triple of the alive subgraph, which must have no 2-in 2-out
    /// component; `v` must be unbalanced. Peels one vertex per step: a
    /// vertex without in-neighbours goes first/last/first, a vertex with a
    /// single in-neighbour `u` is placed using a `u`-triple of the rest.
    fn nonregular(&self, alive: &mut [bool], v: Vertex) -> Result<Triple> {
        let mut remaining = alive.iter().filter(|&&a| a).count();
        if !alive[v] {
            return Err(gap(format!("vertex {v} is not in the subgraph")));
        }
        let mut levels = Vec::new();
        let mut removed = Vec::new();
        let mut flip = false;
        let mut cur = v;
        while remaining > 1 {
            let ins = self.ins(alive, flip, cur);
            if ins.len() >= 2 {
                if self.outs(alive, flip, cur).len() >= 2 {
                    return Err(gap(format!("vertex {cur} is balanced")));
                }
                levels.push(Level::Flip);
                flip = !flip;
                continue;
            }
            alive[cur] = false;
            removed.push(cur);
            remaining -= 1;
            if let Some(&u) = ins.first() {
                levels.push(Level::Pendant { v: cur, u });
                cur = u;
            } else {
                levels.push(Level::Source(cur));
                cur = (0..alive.len())
                    .find(|&w| alive[w] && self.unbalanced(alive, w))
                    .ok_or_else(|| gap("remaining subgraph has no unbalanced vertex".into()))?;
            }
        }
        for &w in &removed {
            alive[w] = true;
        }
        let mut t = Triple::new(vec![cur], vec![cur], vec![cur]);
        for level in levels.into_iter().rev() {
            t = match level {
                Level::Flip => t.from_converse(),
                Level::Source(v) => {
                    let [a, b, c] = t.0;
                    Triple::new(prepend(v, a), append(b, v), prepend(v, c))
                }
                Level::Pendant { v, u } => {
                    let [up, down, mid] = t.0;
                    Triple::new(prepend(v, down), append(mid, v), insert_after(up, u, v)?)
                }
            };
        }
        Ok(t)
    }

    /// Alive subgraph is 2-in 2-out and connected with arcs `a1 -> a2`,
    /// `a1 -> x`, `a2 -> x`.
    fn transitive(&self, alive: &mut [bool], a1: Vertex, a2: Vertex, x: Vertex) -> Result<Triple> {
        alive[a1] = false;
        alive[x] = false;
        let sub = self.nonregular(alive, a2);
        alive[a1] = true;
        alive[x] = true;
        let [up, down, mid] = sub?.0;
        let down_a1 = insert_before(down, a2, a1)?;
        let mut pi = prepend(a1, up);
        pi.insert(2, x);
        Ok(Triple::new(prepend(x, append(mid, a1)), append(down_a1, x), pi))
    }

    /// Extends a triple along an anti-directed path `p = x1 .. xl` (at
    /// least three vertices) whose first vertex has `x2` as its only out-
    /// or only in-neighbour. `t` is an `xl`-triple of the alive subgraph
    /// minus `x1 .. x(l-1)`; the result is an `x1`-triple of the alive
    /// subgraph in which `t[star]` survives as a subsequence of the
    /// ordering selected by `keep`.
    fn antidirected(&self, alive: &mut [bool], flip: bool, p: &[Vertex], t: Triple, star: usize, keep: Keep) -> Result<Triple> {
        if p.len() < 3 {
            return Err(gap(format!("anti-directed path {p:?} is too short")));
        }
        let (x1, x2) = (p[0], p[1]);
        if self.outs(alive, flip, x1) != [x2] {
            if self.ins(alive, flip, x1) == [x2] {
                let r = self.antidirected(alive, !flip, p, t.from_converse(), 1 - star, keep.flipped())?;
                return Ok(r.from_converse());
            }
            return Err(gap(format!("{x2} is neither the only out- nor the only in-neighbour of {x1}")));
        }
        if p.len() == 3 {
            let x3 = p[2];
            let [up, down, mid] = t.0;
            let up_x2 = insert_after(up, x3, x2)?;
            let tail = append(append(mid, x1), x2);
            let t_prime = Triple::new(prepend(x1, up_x2.clone()), append(prepend(x2, down.clone()), x1), tail.clone());
            let mut head = vec![x1, x2];
            head.extend(down);
            let t_second = Triple::new(head, append(up_x2, x1), tail);
            let (first, second) = if star == 0 { (t_prime, t_second) } else { (t_second, t_prime) };
            return Ok(if keep == Keep::First { first } else { second });
        }
        alive[x1] = false;
        let sub = self.antidirected(alive, flip, &p[1..], t, star, Keep::First);
        alive[x1] = true;
        let [up, down, mid] = sub?.0;
        let down_x1 = insert_before(down, x2, x1)?;
        Ok(match keep {
            Keep::First => Triple::new(prepend(x1, up), append(mid, x1), down_x1),
            Keep::Second => Triple::new(prepend(x1, mid), append(up, x1), down_x1),
        })
    }

    /// Grows an anti-directed path from `start -> first`, always to the
    /// lowest eligible vertex, until it cannot grow or hits a stop vertex.
    fn grow_path(&self, alive: &[bool], start: Vertex, first: Vertex, stop: &[Vertex]) -> Vec<Vertex> {
        let mut p = vec![start, first];
        while !stop.contains(p.last().expect("non-empty")) {
            let last = *p.last().expect("non-empty");
            // Arc i joins p[i] and p[i+1]; even arcs point forward.
            let forward = (p.len() - 1) % 2 == 0;
            let cands = if forward { self.outs(alive, false, last) } else { self.ins(alive, false, last) };
            match cands.into_iter().find(|w| !p.contains(w)) {
                Some(w) => p.push(w),
                None => break,
            }
        }
        p
    }

    /// Whether the last arc of an anti-directed path points into its end.
    fn ends_forward(p: &[Vertex]) -> bool {
        (p.len() - 2).is_multiple_of(2)
    }

    /// 2-in 2-out connected subgraph without transitive triangles.
    fn vertex_removal(&self, alive: &mut [bool], x: Vertex) -> Result<(Triple, RemovalCase)> {
        let ins = self.ins(alive, false, x);
        let outs = self.outs(alive, false, x);
        let (a1, a2) = (ins[0], ins[1]);
        alive[x] = false;
        let result = self.removal_cases(alive, a1, a2, [outs[0], outs[1]]);
        alive[x] = true;
        let (t, case) = result?;
        let [up, down, mid] = t.0;
        let sigma = insert_no_backward(self.d, &up, x)?;
        Ok((Triple::new(prepend(x, mid), append(down, x), sigma), case))
    }

    /// An `a2`-triple of the alive subgraph (the component minus `x`) whose
    /// first ordering puts `a1` and `a2` before both out-neighbours of `x`.
    fn removal_cases(&self, alive: &mut [bool], a1: Vertex, a2: Vertex, bs: [Vertex; 2]) -> Result<(Triple, RemovalCase)> {
        let x1 = match self.outs(alive, false, a2)[..] {
            [w] => w,
            _ => return Err(gap(format!("{a2} should have exactly one out-neighbour after removal"))),
        };
        let p = self.grow_path(alive, a2, x1, &[a1, bs[0], bs[1]]);
        let ell = *p.last().expect("non-empty");
        let inner = &p[..p.len() - 1];
        let set = |alive: &mut [bool], vs: &[Vertex], on: bool| vs.iter().for_each(|&v| alive[v] = on);

        if ell == a1 {
            set(alive, inner, false);
            let t = self.nonregular(alive, a1);
            set(alive, inner, true);
            let t = self.antidirected(alive, false, &p, t?, 0, Keep::First)?;
            return Ok((t, RemovalCase::ReachedIn));
        }
        if !bs.contains(&ell) {
            set(alive, &p, false);
            let t = self.nonregular(alive, a1);
            set(alive, &p, true);
            let [up, down, mid] = t?.0;
            let third = if Self::ends_forward(&p) { prepend(ell, mid) } else { append(mid, ell) };
            let t = Triple::new(prepend(ell, up), append(down, ell), third);
            let t = self.antidirected(alive, false, &p, t, 0, Keep::First)?;
            return Ok((t, RemovalCase::Maximal));
        }
        let b2 = ell;
        let b1 = if bs[0] == b2 { bs[1] } else { bs[0] };
        if Self::ends_forward(&p) {
            set(alive, &p, false);
            let t = self.nonregular(alive, a1);
            set(alive, &p, true);
            let [up, down, mid] = t?.0;
            let t = Triple::new(prepend(b2, down), append(up, b2), prepend(b2, mid));
            let t = self.antidirected(alive, false, &p, t, 1, Keep::First)?;
            return Ok((t, RemovalCase::ReachedOutForward));
        }
        set(alive, inner, false);
        let s1 = self.outs(alive, false, b2).into_iter().find(|&w| w != a1);
        let Some(s1) = s1 else {
            alive[b2] = false;
            let t = self.nonregular(alive, a1);
            set(alive, inner, true);
            alive[b2] = true;
            let [up, down, mid] = t?.0;
            let down_b2 = insert_before(down, a1, b2)?;
            let t = Triple::new(prepend(b2, mid), append(up, b2), down_b2);
            let t = self.antidirected(alive, false, &p, t, 1, Keep::First)?;
            return Ok((t, RemovalCase::ReachedOutDeadEnd));
        };
        let q = self.grow_path(alive, b2, s1, &[a1, b1]);
        let sk = *q.last().expect("non-empty");
        let q_inner = &q[..q.len() - 1];
        let (tb2, case) = if sk == a1 || sk == b1 {
            set(alive, q_inner, false);
            let t = self.nonregular(alive, sk);
            set(alive, q_inner, true);
            let star = if sk == a1 { 0 } else { 1 };
            (self.antidirected(alive, false, &q, t?, star, Keep::Second), RemovalCase::SecondPathReached)
        } else {
            set(alive, &q, false);
            let t = self.nonregular(alive, a1);
            set(alive, &q, true);
            let [up, down, mid] = t?.0;
            let tb2 = if q.len() == 2 {
                let mut first = vec![b2, s1];
                first.extend(mid);
                Ok(Triple::new(first, append(prepend(s1, up), b2), append(append(down, b2), s1)))
            } else {
                set(alive, q_inner, false);
                let no_in = self.ins(alive, false, sk).is_empty();
                set(alive, q_inner, true);
                let third = if no_in { prepend(sk, mid) } else { append(mid, sk) };
                let t = Triple::new(prepend(sk, up), append(down, sk), third);
                self.antidirected(alive, false, &q, t, 0, Keep::Second)
            };
            (tb2, RemovalCase::SecondPathMaximal)
        };
        set(alive, inner, true);
        let t = self.antidirected(alive, false, &p, tb2?, 1, Keep::First)?;
        Ok((t, case))
    }
}

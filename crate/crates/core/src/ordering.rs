//! Vertex orderings, backward arcs and the triple certificates used by the
//! three-way partition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, Vertex};

/// `pos[v]` = index of `v` in `order`. Fails unless `order` is a permutation of `0..n`.
pub fn positions(n: usize, order: &[Vertex]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::NotAPermutation(format!("length {} for {n} vertices", order.len())));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::NotAPermutation(format!("vertex {v} out of range")));
        }
        if pos[v] != usize::MAX {
            return Err(Error::NotAPermutation(format!("vertex {v} repeated")));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Arcs `(u, v)` with `v` placed before `u`.
pub fn backward_arcs(d: &Digraph, order: &[Vertex]) -> Result<Vec<ArcId>> {
    let pos = positions(d.n(), order)?;
    Ok((0..d.arc_count())
        .filter(|&a| {
            let (u, v) = d.arc(a);
            pos[v] < pos[u]
        })
        .collect())
}

/// Total weight (count, if unweighted) of the backward arcs.
pub fn backward_weight(d: &Digraph, order: &[Vertex]) -> Result<f64> {
    Ok(backward_arcs(d, order)?.into_iter().map(|a| d.weight(a)).sum())
}

/// Three vertex orderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple(pub [Vec<Vertex>; 3]);

impl Triple {
    pub fn new(a: Vec<Vertex>, b: Vec<Vertex>, c: Vec<Vertex>) -> Self {
        Triple([a, b, c])
    }

    pub fn orders(&self) -> &[Vec<Vertex>; 3] {
        &self.0
    }

    /// Reversing every ordering turns a good triple of the converse into a
    /// good triple of the original; swapping the first two keeps the
    /// first/last role of a distinguished vertex.
    pub fn from_converse(self) -> Triple {
        let [a, b, c] = self.0;
        Triple([rev(b), rev(a), rev(c)])
    }
}

pub(crate) fn rev(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.reverse();
    v
}

/// Why a triple fails to be good.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleViolation {
    /// Some ordering is not a permutation of the vertex set.
    Malformed { index: usize, reason: String },
    /// An arc is backward in `count != 1` of the orderings.
    Arc { arc: ArcId, count: usize },
    /// The distinguished vertex is not first in the first ordering or not
    /// last in the second.
    Anchor { vertex: Vertex },
}

/// Checks that every arc is backward in exactly one of the three orderings.
pub fn verify_good_triple(d: &Digraph, t: &Triple) -> std::result::Result<(), TripleViolation> {
    let mut pos = Vec::with_capacity(3);
    for (index, order) in t.0.iter().enumerate() {
        match positions(d.n(), order) {
            Ok(p) => pos.push(p),
            Err(e) => return Err(TripleViolation::Malformed { index, reason: e.to_string() }),
        }
    }
    for a in 0..d.arc_count() {
        let (u, v) = d.arc(a);
        let count = pos.iter().filter(|p| p[v] < p[u]).count();
        if count != 1 {
            return Err(TripleViolation::Arc { arc: a, count });
        }
    }
    Ok(())
}

/// A good triple whose first ordering starts with `v` and whose second ends with `v`.
pub fn verify_vertex_triple(d: &Digraph, t: &Triple, v: Vertex) -> std::result::Result<(), TripleViolation> {
    verify_good_triple(d, t)?;
    if t.0[0].first() != Some(&v) || t.0[1].last() != Some(&v) {
        return Err(TripleViolation::Anchor { vertex: v });
    }
    Ok(())
}

/// True when `sub` appears in `order` in the same relative order.
pub fn is_subordering(sub: &[Vertex], order: &[Vertex]) -> bool {
    let mut it = order.iter();
    sub.iter().all(|x| it.any(|y| y == x))
}

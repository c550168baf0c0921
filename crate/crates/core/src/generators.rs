//! Graph families, gadgets and random instances.
//!
//! Vertex and arc numbering is part of the contract:
//! - split graphs number the chain of vertex `v` as `k*v .. k*v + k - 1` and
//!   list the chain arcs before the inherited arcs;
//! - path-based gadgets list path arcs before connector arcs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph, Vertex};

/// `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::Precondition(format!("a directed cycle needs n >= 2, got {n}")));
    }
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Tournament with `i -> i + j (mod n)` for `j = 1 ..= (n-1)/2`.
pub fn rotational_tournament(n: usize) -> Result<Digraph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("rotational tournaments need odd n >= 3, got {n}")));
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 1..=(n - 1) / 2 {
            arcs.push((i, (i + j) % n));
        }
    }
    Digraph::new(n, arcs)
}

/// Replaces every vertex `v` by a directed chain of `k` vertices; arcs into
/// `v` enter the head `k*v`, arcs out of `v` leave the tail `k*v + k - 1`.
pub fn split_k(d: &Digraph, k: usize) -> Result<Digraph> {
    if k < 1 {
        return Err(Error::Precondition("split factor must be positive".into()));
    }
    let mut arcs = Vec::with_capacity(d.n() * (k - 1) + d.arc_count());
    for v in 0..d.n() {
        for i in 0..k - 1 {
            arcs.push((k * v + i, k * v + i + 1));
        }
    }
    for &(u, v) in d.arcs() {
        arcs.push((k * u + k - 1, k * v));
    }
    Digraph::new(d.n() * k, arcs)
}

/// Splits each vertex of a 3-regular digraph into four, giving maximum
/// degree 3 and twice as many arcs.
///
/// Vertex `v` becomes `v's = 4v`, `vs = 4v+1`, `vt = 4v+2`, `v't = 4v+3`
/// with chain arcs `v's -> vs -> vt -> v't` (listed first). Ranking the
/// in-arcs of `v` by id as `w1, w2, w3`, `w1` enters `vs` and the others
/// enter `v's`; ranking the out-arcs as `q1, q2, q3`, `q1` leaves `vt` and
/// the others leave `v't`.
pub fn split4_degree3(d: &Digraph) -> Result<Digraph> {
    if let Some(v) = (0..d.n()).find(|&v| d.out_degree(v) != 3 || d.in_degree(v) != 3) {
        return Err(Error::Precondition(format!("vertex {v} is not 3-in, 3-out")));
    }
    let mut arcs = Vec::with_capacity(3 * d.n() + d.arc_count());
    for v in 0..d.n() {
        arcs.extend([(4 * v, 4 * v + 1), (4 * v + 1, 4 * v + 2), (4 * v + 2, 4 * v + 3)]);
    }
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        let tail = if d.out_arcs(u)[0] == a { 4 * u + 2 } else { 4 * u + 3 };
        let head = if d.in_arcs(v)[0] == a { 4 * v + 1 } else { 4 * v };
        arcs.push((tail, head));
    }
    Digraph::new(4 * d.n(), arcs)
}

/// `K_{5,5}` with parts `X = 0..5`, `Y = 5..10`: the matching `i -> 5+i`
/// (arcs 0..5) and every other pair oriented from `Y` to `X`.
pub fn gadget_h5() -> Digraph {
    let mut arcs: Vec<(Vertex, Vertex)> = (0..5).map(|i| (i, 5 + i)).collect();
    for j in 0..5 {
        for i in 0..5 {
            if i != j {
                arcs.push((5 + j, i));
            }
        }
    }
    Digraph::new(10, arcs).expect("gadget is a valid orgraph")
}

/// Two-way split of the rotational 7-tournament: 14 vertices, 28 arcs, girth 6.
pub fn gadget_h4() -> Digraph {
    split_k(&rotational_tournament(7).expect("7 is odd"), 2).expect("split of a valid graph")
}

/// Three-way split of the rotational 5-tournament: 15 vertices, 20 arcs, girth 9.
pub fn gadget_h3() -> Digraph {
    split_k(&rotational_tournament(5).expect("5 is odd"), 3).expect("split of a valid graph")
}

/// Three directed paths on `k = g/2` vertices each plus every arc from the
/// end of one path to the start of another.
///
/// Path `j` (0-based) occupies vertices `j*k .. j*k + k - 1`. Arcs: the
/// `3(k-1)` path arcs by path, then the 6 connectors ordered by (from, to).
pub fn gadget_dg(g: usize) -> Result<Digraph> {
    if g < 4 || g % 2 == 1 {
        return Err(Error::Precondition(format!("D_g needs even g >= 4, got {g}")));
    }
    let k = g / 2;
    let mut arcs = Vec::with_capacity(3 * (k - 1) + 6);
    for j in 0..3 {
        for i in 0..k - 1 {
            arcs.push((j * k + i, j * k + i + 1));
        }
    }
    for from in 0..3 {
        for to in 0..3 {
            if from != to {
                arcs.push((from * k + k - 1, to * k));
            }
        }
    }
    Digraph::new(3 * k, arcs)
}

fn check_odd_cycle(l: usize) -> Result<()> {
    if l < 3 || l.is_multiple_of(2) {
        return Err(Error::Precondition(format!("needs odd length >= 3, got {l}")));
    }
    Ok(())
}

/// An undirected odd cycle with every edge replaced by a digon; arcs
/// `(i, i+1), (i+1, i)` for each `i`.
pub fn gadget_co(l: usize) -> Result<Digraph> {
    check_odd_cycle(l)?;
    let mut arcs = Vec::with_capacity(2 * l);
    for i in 0..l {
        let j = (i + 1) % l;
        arcs.push((i, j));
        arcs.push((j, i));
    }
    Digraph::new(l, arcs)
}

/// Vertex-split form of [`gadget_co`]: `v` becomes `v- = 2v` and `v+ = 2v+1`
/// joined by `v- -> v+` (listed first); each digon arc `(u, v)` becomes
/// `u+ -> v-`.
pub fn gadget_co_prime(l: usize) -> Result<Digraph> {
    let co = gadget_co(l)?;
    let mut arcs: Vec<(Vertex, Vertex)> = (0..l).map(|v| (2 * v, 2 * v + 1)).collect();
    arcs.extend(co.arcs().iter().map(|&(u, v)| (2 * u + 1, 2 * v)));
    Digraph::new(2 * l, arcs)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Paley graph on `Z_q`: `x ~ y` iff `x - y` is a nonzero square mod `q`.
/// Only primes `q ≡ 1 (mod 4)` are accepted.
pub fn paley_graph(q: usize) -> Result<UndirectedGraph> {
    if q % 4 != 1 || !is_prime(q as u64) {
        return Err(Error::Precondition(format!("Paley graphs need a prime q ≡ 1 (mod 4), got {q}")));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let mut edges = Vec::new();
    for x in 0..q {
        for y in x + 1..q {
            if square[y - x] {
                edges.push((x, y));
            }
        }
    }
    UndirectedGraph::new(q, edges)
}

/// Circulant graph: `i ~ i ± j (mod n)` for every `j` in `jumps`.
pub fn circulant_graph(n: usize, jumps: &[usize]) -> Result<UndirectedGraph> {
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..n {
        for &j in jumps {
            if j == 0 || j % n == 0 {
                return Err(Error::Precondition(format!("jump {j} is a loop on {n} vertices")));
            }
            let k = (i + j) % n;
            edges.insert((i.min(k), i.max(k)));
        }
    }
    UndirectedGraph::new(n, edges.into_iter().collect())
}

/// Smallest prime `x` with `x ≡ 1 (mod 2^k)` and `x ≡ 4 (mod p)`, found by
/// stepping through the unique residue class mod `2^k p`.
pub fn prime_in_progression(p: u64, k: u32, max_steps: u64) -> Result<u64> {
    if p < 3 || p.is_multiple_of(2) || !(1..=40).contains(&k) {
        return Err(Error::Precondition(format!("needs odd p >= 3 and 1 <= k <= 40, got p={p}, k={k}")));
    }
    let two_k = 1u64 << k;
    let modulus = two_k * p;
    let start = (0..p)
        .map(|j| 1 + j * two_k)
        .find(|x| x % p == 4 % p)
        .expect("2^k is invertible mod odd p");
    let mut x = start;
    for _ in 0..max_steps {
        if is_prime(x) {
            return Ok(x);
        }
        x = x.checked_add(modulus).ok_or_else(|| Error::TooLarge("progression overflowed u64".into()))?;
    }
    Err(Error::BudgetExceeded { budget: max_steps })
}

/// Parameters for random orgraphs.
#[derive(Debug, Clone, Copy)]
pub struct RandomOrgraph {
    pub n: usize,
    pub max_degree: usize,
    pub min_girth: usize,
    /// Stop after this many arcs; `None` adds arcs until no candidate fits.
    pub max_arcs: Option<usize>,
}

impl RandomOrgraph {
    /// Candidate pairs are tried in a seeded random order and kept when they
    /// respect the degree cap, create no digon and close no cycle shorter
    /// than `min_girth`. Never fails: an infeasible target just stops early.
    pub fn generate(&self, seed: u64) -> Digraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        let mut pairs: Vec<(Vertex, Vertex)> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        pairs.shuffle(&mut rng);
        let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut deg = vec![0usize; n];
        let mut arcs = Vec::new();
        let limit = self.max_arcs.unwrap_or(usize::MAX);
        for (u, v) in pairs {
            if arcs.len() >= limit {
                break;
            }
            if deg[u] >= self.max_degree || deg[v] >= self.max_degree {
                continue;
            }
            if out[u].contains(&v) || out[v].contains(&u) {
                continue;
            }
            // The new arc closes a cycle of length dist(v, u) + 1.
            if self.min_girth > 2 && within_distance(&out, v, u, self.min_girth - 2) {
                continue;
            }
            out[u].push(v);
            deg[u] += 1;
            deg[v] += 1;
            arcs.push((u, v));
        }
        Digraph::new(n, arcs).expect("generator only adds fresh non-loop arcs")
    }
}

/// `random_orgraph(n, Δmax, gmin, seed)`: a maximal random orgraph.
pub fn random_orgraph(n: usize, max_degree: usize, min_girth: usize, seed: u64) -> Digraph {
    RandomOrgraph { n, max_degree, min_girth, max_arcs: None }.generate(seed)
}

fn within_distance(out: &[Vec<Vertex>], from: Vertex, to: Vertex, limit: usize) -> bool {
    if from == to {
        return true;
    }
    let mut frontier = vec![from];
    let mut seen = vec![from];
    for _ in 0..limit {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &out[x] {
                if y == to {
                    return true;
                }
                if !seen.contains(&y) {
                    seen.push(y);
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    false
}

/// Random 2-in 2-out orgraph: a random simple 4-regular graph given an
/// Eulerian orientation along randomly ordered trails. The graph comes from
/// random edge switches applied to a circulant (pairing model with restarts
/// when no suitable circulant exists). With `triangle_free`, underlying
/// triangles never appear.
pub fn random_two_regular_orgraph(n: usize, triangle_free: bool, seed: u64) -> Result<Digraph> {
    let min_n = if triangle_free { 8 } else { 5 };
    if n < min_n {
        return Err(Error::Precondition(format!("need n >= {min_n}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = (2..=(n - 1) / 2)
        .map(|j| circulant_graph(n, &[1, j]))
        .filter_map(|g| g.ok())
        .find(|g| g.regular_degree() == Some(4) && !(triangle_free && has_triangle(g)));
    let mut edges = match start {
        Some(g) => switch_edges(g.edges().to_vec(), n, triangle_free, &mut rng),
        None => pairing_model(n, triangle_free, &mut rng)?,
    };
    edges.shuffle(&mut rng);
    let edges = edges.into_iter().map(|(u, v)| if rng.gen::<bool>() { (u, v) } else { (v, u) }).collect();
    UndirectedGraph::new(n, edges)?.eulerian_orient()
}

fn has_triangle(g: &UndirectedGraph) -> bool {
    g.edges().iter().any(|&(u, v)| g.neighbors(u).iter().any(|w| g.neighbors(v).contains(w)))
}

/// Degree-preserving double-edge switches: `{a,b},{c,d}` becomes
/// `{a,d},{c,b}` whenever the result stays simple (and triangle-free).
fn switch_edges(mut edges: Vec<(Vertex, Vertex)>, n: usize, triangle_free: bool, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut adj = vec![Vec::with_capacity(4); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let remove = |adj: &mut [Vec<Vertex>], u: Vertex, v: Vertex| {
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
    };
    let m = edges.len();
    let mut done = 0;
    for _ in 0..100 * m {
        if done >= 10 * m {
            break;
        }
        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if i == j || a == d || c == b || adj[a].contains(&d) || adj[c].contains(&b) {
            continue;
        }
        remove(&mut adj, a, b);
        remove(&mut adj, c, d);
        let creates_triangle = triangle_free
            && (a == c || b == d || adj[a].iter().any(|w| adj[d].contains(w)) || adj[c].iter().any(|w| adj[b].contains(w)));
        if creates_triangle {
            adj[a].push(b);
            adj[b].push(a);
            adj[c].push(d);
            adj[d].push(c);
            continue;
        }
        adj[a].push(d);
        adj[d].push(a);
        adj[c].push(b);
        adj[b].push(c);
        edges[i] = (a, d);
        edges[j] = (c, b);
        done += 1;
    }
    edges
}

fn pairing_model(n: usize, triangle_free: bool, rng: &mut ChaCha8Rng) -> Result<Vec<(Vertex, Vertex)>> {
    for _ in 0..100_000 {
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| [v; 4]).collect();
        stubs.shuffle(rng);
        let mut adj = vec![Vec::with_capacity(4); n];
        let mut edges = Vec::with_capacity(2 * n);
        let ok = stubs.chunks(2).all(|e| {
            let (u, v) = (e[0], e[1]);
            if u == v || adj[u].contains(&v) {
                return false;
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
            true
        });
        if ok && !(triangle_free && edges.iter().any(|&(u, v)| adj[u].iter().any(|w| adj[v].contains(w)))) {
            return Ok(edges);
        }
    }
    Err(Error::BudgetExceeded { budget: 100_000 })
}

/// Split form of a random 2-in 2-out orgraph `h` on `n` vertices: vertex
/// `v` becomes the arc `2v -> 2v+1` and each arc `uv` of `h` becomes a path
/// from `2u+1` to `2v` with 0 to 2 inner vertices. With probability 0.3 one
/// path arc is dropped. Maximum degree 3 and girth at least `2 g(h) >= 6`.
pub fn random_split_orgraph(n: usize, seed: u64) -> Result<Digraph> {
    let h = random_two_regular_orgraph(n, false, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
    let mut arcs: Vec<(Vertex, Vertex)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    let mut next = 2 * n;
    for &(u, v) in h.arcs() {
        let mut tail = 2 * u + 1;
        for _ in 0..rng.gen_range(0..3) {
            arcs.push((tail, next));
            tail = next;
            next += 1;
        }
        arcs.push((tail, 2 * v));
    }
    if rng.gen_bool(0.3) {
        let i = rng.gen_range(n..arcs.len());
        arcs.swap_remove(i);
    }
    Digraph::new(next, arcs)
}

/// Random positive weights with at most two decimals, in `[0.01, 10]`.
pub fn random_weights(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m).map(|_| rng.gen_range(1..=1000) as f64 / 100.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn small_families() {
        assert_eq!(directed_cycle(3).unwrap().girth(), Girth::Finite(3));
        assert!(directed_cycle(1).is_err());
        assert_eq!(directed_cycle(2).unwrap().girth(), Girth::Finite(2));
        assert!(rotational_tournament(6).is_err());
        let t3 = rotational_tournament(3).unwrap();
        assert_eq!(t3.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        let six = split_k(&directed_cycle(3).unwrap(), 2).unwrap();
        assert_eq!(six.arc_count(), 6);
        assert_eq!(six.girth(), Girth::Finite(6));
        assert!(six.is_oriented() && (0..6).all(|v| six.out_degree(v) == 1 && six.in_degree(v) == 1));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), slow, "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn paley_rejects_bad_orders() {
        assert!(paley_graph(7).is_err());
        assert!(paley_graph(9).is_err());
        assert_eq!(paley_graph(13).unwrap().regular_degree(), Some(6));
    }

    #[test]
    fn circulant_degree() {
        let g = circulant_graph(10, &[1, 3]).unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(circulant_graph(10, &[5]).unwrap().regular_degree(), Some(1));
    }
}

//! Spectral certificates for regular graphs: extreme nontrivial adjacency
//! eigenvalues, the expander mixing inequality, the ordering lower bound for
//! Eulerian orientations, and a random-orientation experiment.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{weak_components, Digraph, UndirectedGraph, Vertex};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Slack used when comparing a real bound with an integer count.
pub const BOUND_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub degree: usize,
    /// `max |λ_i|` over `i >= 2`; equals `degree` for bipartite or disconnected graphs.
    pub lambda: f64,
    /// `max |λ_i|` over eigenvalues with `|λ_i| != degree`.
    pub lambda_prime: f64,
    /// Largest and smallest eigenvalue orthogonal to the `±degree` eigenvectors.
    pub inner_max: f64,
    pub inner_min: f64,
    pub bipartite: bool,
    pub connected: bool,
    /// Largest `|A y - θ y|` over the two reported eigenpairs.
    pub residual: f64,
}

impl SpectralReport {
    /// `λ' <= 2 sqrt(d - 1)`.
    pub fn is_ramanujan(&self) -> bool {
        self.connected && self.lambda_prime <= 2.0 * ((self.degree as f64) - 1.0).sqrt() + BOUND_SLACK
    }
}

fn multiply(g: &UndirectedGraph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        *out = g.neighbors(v).iter().map(|&w| x[w]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn project_out(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(x, b);
        x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
    }
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(alpha: &[f64], beta: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..alpha.len() {
        let b2 = if i == 0 { 0.0 } else { beta[i - 1] * beta[i - 1] };
        q = alpha[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (alpha[i].abs() + x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based) by bisection.
fn tridiagonal_eigenvalue(alpha: &[f64], beta: &[f64], k: usize) -> f64 {
    let radius = (0..alpha.len())
        .map(|i| alpha[i].abs() + if i > 0 { beta[i - 1].abs() } else { 0.0 } + beta.get(i).map_or(0.0, |b| b.abs()))
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(alpha, beta, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvector of the tridiagonal matrix for eigenvalue `theta` by inverse iteration.
fn tridiagonal_vector(alpha: &[f64], beta: &[f64], theta: f64) -> Vec<f64> {
    let k = alpha.len();
    let shift = theta + 1e-10 * (1.0 + theta.abs());
    let mut x = vec![1.0; k];
    for _ in 0..3 {
        // Thomas algorithm on (T - shift I) y = x with partial safeguarding
        let mut c = vec![0.0; k];
        let mut d = vec![0.0; k];
        let mut denom = alpha[0] - shift;
        if denom.abs() < 1e-300 {
            denom = 1e-300;
        }
        c[0] = if k > 1 { beta[0] / denom } else { 0.0 };
        d[0] = x[0] / denom;
        for i in 1..k {
            let mut m = alpha[i] - shift - beta[i - 1] * c[i - 1];
            if m.abs() < 1e-300 {
                m = 1e-300;
            }
            c[i] = if i + 1 < k { beta[i] / m } else { 0.0 };
            d[i] = (x[i] - beta[i - 1] * d[i - 1]) / m;
        }
        let mut y = vec![0.0; k];
        y[k - 1] = d[k - 1];
        for i in (0..k - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        let s = norm(&y);
        x = y.into_iter().map(|v| v / s).collect();
    }
    x
}

/// Lanczos with full reorthogonalisation on the complement of `basis`;
/// returns the extreme eigenpairs `(value, vector)` (smallest, largest),
/// or `None` when the complement is trivial.
fn lanczos_extremes(g: &UndirectedGraph, basis: &[Vec<f64>], seed: u64) -> Option<[(f64, Vec<f64>); 2]> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_out(&mut q, basis);
    let s = norm(&q);
    if s < 1e-12 {
        return None;
    }
    q.iter_mut().for_each(|x| *x /= s);
    let mut qs: Vec<Vec<f64>> = vec![q];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    let cap = n.saturating_sub(basis.len()).max(1);
    loop {
        let j = qs.len() - 1;
        multiply(g, &qs[j], &mut w);
        let a = dot(&w, &qs[j]);
        alpha.push(a);
        for _ in 0..2 {
            project_out(&mut w, basis);
            project_out(&mut w, &qs);
        }
        let b = norm(&w);
        if alpha.len() >= cap || b < 1e-10 {
            break;
        }
        beta.push(b);
        qs.push(w.iter().map(|x| x / b).collect());
    }
    let k = alpha.len();
    let pair = |idx: usize| {
        let theta = tridiagonal_eigenvalue(&alpha, &beta, idx);
        let s = tridiagonal_vector(&alpha, &beta, theta);
        let mut y = vec![0.0; n];
        for (coef, qv) in s.iter().zip(&qs) {
            y.iter_mut().zip(qv).for_each(|(yi, qi)| *yi += coef * qi);
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|x| *x /= ny);
        (theta, y)
    };
    Some([pair(0), pair(k - 1)])
}

fn residual(g: &UndirectedGraph, theta: f64, y: &[f64]) -> f64 {
    let mut ay = vec![0.0; y.len()];
    multiply(g, y, &mut ay);
    ay.iter().zip(y).map(|(a, b)| (a - theta * b).powi(2)).sum::<f64>().sqrt()
}

/// Extreme eigenvalues of a regular graph apart from the `±d` eigenvalues
/// carried by component indicators and bipartition sign vectors.
pub fn lambda_extremes(g: &UndirectedGraph, tol: f64) -> Result<SpectralReport> {
    let n = g.n();
    let d = g.regular_degree().ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    let digraph = Digraph::new(n, g.edges().to_vec())?;
    let comps = weak_components(&digraph);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut bipartite = d > 0;
    for comp in &comps {
        let s = (comp.len() as f64).sqrt();
        let mut ind = vec![0.0; n];
        comp.iter().for_each(|&v| ind[v] = 1.0 / s);
        basis.push(ind);
        match component_sides(g, comp) {
            Some(side) => {
                let mut signed = vec![0.0; n];
                comp.iter().for_each(|&v| signed[v] = if side[v] { 1.0 } else { -1.0 } / s);
                if d > 0 {
                    basis.push(signed);
                }
            }
            None => bipartite = false,
        }
    }
    let connected = comps.len() <= 1;
    let Some([(lo, ylo), (hi, yhi)]) = lanczos_extremes(g, &basis, 0x5eed ^ n as u64) else {
        return Ok(SpectralReport {
            n,
            degree: d,
            lambda: if connected && !bipartite { 0.0 } else { d as f64 },
            lambda_prime: 0.0,
            inner_max: 0.0,
            inner_min: 0.0,
            bipartite,
            connected,
            residual: 0.0,
        });
    };
    let res = residual(g, lo, &ylo).max(residual(g, hi, &yhi));
    if res > tol.max(1e-12) * (1.0 + d as f64) {
        return Err(Error::InternalGap(format!("eigenpair residual {res:e} above tolerance {tol:e}")));
    }
    let lambda_prime = lo.abs().max(hi.abs());
    Ok(SpectralReport {
        n,
        degree: d,
        lambda: if connected && !bipartite { lambda_prime } else { d as f64 },
        lambda_prime,
        inner_max: hi,
        inner_min: lo,
        bipartite,
        connected,
        residual: res,
    })
}

fn component_sides(g: &UndirectedGraph, comp: &[Vertex]) -> Option<Vec<bool>> {
    let mut side = vec![None; g.n()];
    side[comp[0]] = Some(true);
    let mut stack = vec![comp[0]];
    while let Some(u) = stack.pop() {
        let su = side[u].expect("visited");
        for &w in g.neighbors(u) {
            match side[w] {
                None => {
                    side[w] = Some(!su);
                    stack.push(w);
                }
                Some(sw) if sw == su => return None,
                _ => {}
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingCheck {
    /// Ordered pairs `(s, t)` in `S x T` with `st` an edge.
    pub edges: usize,
    pub expected: f64,
    pub deviation: f64,
    pub bound: f64,
    pub holds: bool,
    /// `(d - λ) n / 4` when `|S| = |T| = n / 2`.
    pub halves_lower: Option<f64>,
}

/// Evaluates `|e(S,T) - d|S||T|/n| <= λ sqrt(|S||T|(1-|S|/n)(1-|T|/n))`.
pub fn mixing_check(g: &UndirectedGraph, s: &[Vertex], t: &[Vertex], lambda: f64) -> Result<MixingCheck> {
    let n = g.n();
    let d = g.regular_degree().ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    let as_set = |x: &[Vertex]| -> Result<Vec<bool>> {
        let mut m = vec![false; n];
        for &v in x {
            if v >= n || m[v] {
                return Err(Error::Precondition(format!("vertex {v} out of range or repeated")));
            }
            m[v] = true;
        }
        Ok(m)
    };
    as_set(s)?;
    let mt = as_set(t)?;
    let edges: usize = s.iter().map(|&u| g.neighbors(u).iter().filter(|&&w| mt[w]).count()).sum();
    let (fs, ft, fnn) = (s.len() as f64, t.len() as f64, n.max(1) as f64);
    let expected = d as f64 * fs * ft / fnn;
    let deviation = (edges as f64 - expected).abs();
    let bound = lambda * (fs * ft * (1.0 - fs / fnn) * (1.0 - ft / fnn)).max(0.0).sqrt();
    let halves_lower = (2 * s.len() == n && 2 * t.len() == n).then(|| (d as f64 - lambda) * fnn / 4.0);
    Ok(MixingCheck {
        edges,
        expected,
        deviation,
        bound,
        holds: deviation <= bound + BOUND_SLACK && halves_lower.is_none_or(|lb| edges as f64 >= lb - BOUND_SLACK),
        halves_lower,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientationBound {
    pub n: usize,
    pub degree: usize,
    pub lambda: f64,
    /// `(d - λ) n / 8`.
    pub bound: f64,
    /// `ceil(bound - 1e-6)`: every ordering has at least this many backward arcs.
    pub guaranteed: usize,
    /// The bound with `λ = 2 sqrt(d - 1)`, i.e. `(p + 1 - 2 sqrt p) n / 8` for `p = d - 1`.
    pub ramanujan_bound: f64,
}

/// Lower bound on the backward arcs of any ordering of an Eulerian orientation of a
/// `d`-regular graph whose nontrivial eigenvalues are at most `lambda` in absolute value.
pub fn orientation_fas_lower_bound(d: &Digraph, lambda: f64) -> Result<OrientationBound> {
    let n = d.n();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("order {n} is odd; the halving argument needs even order")));
    }
    if !d.is_oriented() {
        return Err(Error::Precondition("digraph has a digon".into()));
    }
    if let Some(v) = (0..n).find(|&v| d.in_degree(v) != d.out_degree(v)) {
        return Err(Error::Precondition(format!("vertex {v} has in-degree {} and out-degree {}", d.in_degree(v), d.out_degree(v))));
    }
    let degree = if n == 0 { 0 } else { d.degree(0) };
    if (0..n).any(|v| d.degree(v) != degree) {
        return Err(Error::Precondition("underlying graph is not regular".into()));
    }
    let bound = (degree as f64 - lambda) * n as f64 / 8.0;
    let ramanujan = if degree >= 1 { degree as f64 - 2.0 * (degree as f64 - 1.0).sqrt() } else { 0.0 };
    Ok(OrientationBound {
        n,
        degree,
        lambda,
        bound,
        guaranteed: (bound - BOUND_SLACK).ceil().max(0.0) as usize,
        ramanujan_bound: ramanujan * n as f64 / 8.0,
    })
}

/// Backward arcs across the halving levels of an ordering: entry `i` sums,
/// over the blocks of size `n / 2^i`, the arcs from a block's second half
/// into its first half.
pub fn level_statistic(d: &Digraph, order: &[Vertex]) -> Result<[usize; 3]> {
    let n = d.n();
    if !n.is_multiple_of(8) {
        return Err(Error::Precondition(format!("order {n} is not divisible by 8")));
    }
    let pos = crate::ordering::positions(n, order)?;
    let mut out = [0usize; 3];
    for &(u, v) in d.arcs() {
        let (pu, pv) = (pos[u], pos[v]);
        if pu <= pv {
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate() {
            let block = n >> i;
            let half = block / 2;
            if pu / block == pv / block && (pu % block) >= half && (pv % block) < half {
                *slot += 1;
            }
        }
    }
    Ok(out)
}

/// Undirected edges between the two halves of each block, per level.
fn level_cross_edges(g: &UndirectedGraph, pos: &[usize]) -> [usize; 3] {
    let n = g.n();
    let mut out = [0usize; 3];
    for &(u, v) in g.edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        for (i, slot) in out.iter_mut().enumerate() {
            let block = n >> i;
            let half = block / 2;
            if a / block == b / block && a % block < half && b % block >= half {
                *slot += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientationSample {
    pub trial: usize,
    pub ordering: usize,
    /// 1, 2 or 3.
    pub level: usize,
    /// Edges of `G` crossing the block halves at this level.
    pub cross_edges: usize,
    /// Arcs of the orientation running backward across those halves.
    pub backward: usize,
    /// `cross_edges / 2 - sqrt(ln 2 * cross_edges * n * level / 2)`.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub edges: usize,
    pub trials: usize,
    pub orderings: usize,
    pub samples: Vec<OrientationSample>,
    /// Smallest three-level sum over all trials and orderings.
    pub min_level_sum: usize,
    /// Smallest number of backward arcs over all trials and orderings.
    pub min_backward: usize,
    /// Samples whose backward count fell below the threshold.
    pub below_threshold: usize,
    /// Mean of `backward / cross_edges` at level 1.
    pub level1_ratio: f64,
}

/// Uniformly random orientations of `g`, each evaluated on random orderings.
/// Trial `i` draws from stream `i` of a generator seeded with `seed`.
pub fn random_orientation_experiment(g: &UndirectedGraph, trials: usize, orderings: usize, seed: u64) -> Result<ExperimentReport> {
    let n = g.n();
    if !n.is_multiple_of(8) || n == 0 {
        return Err(Error::Precondition(format!("order {n} must be a positive multiple of 8")));
    }
    let mut samples = Vec::new();
    let (mut min_sum, mut min_back, mut below) = (usize::MAX, usize::MAX, 0);
    let (mut ratio_sum, mut ratio_count) = (0.0, 0usize);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let arcs: Vec<(Vertex, Vertex)> = g.edges().iter().map(|&(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
        let d = Digraph::new(n, arcs)?;
        for ordering in 0..orderings {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.shuffle(&mut rng);
            let pos = crate::ordering::positions(n, &order)?;
            let stat = level_statistic(&d, &order)?;
            let cross = level_cross_edges(g, &pos);
            let back = crate::ordering::backward_arcs(&d, &order)?.len();
            min_sum = min_sum.min(stat.iter().sum());
            min_back = min_back.min(back);
            for i in 0..3 {
                let threshold = cross[i] as f64 / 2.0 - (std::f64::consts::LN_2 * cross[i] as f64 * n as f64 * (i + 1) as f64 / 2.0).sqrt();
                below += usize::from((stat[i] as f64) < threshold);
                if i == 0 && cross[0] > 0 {
                    ratio_sum += stat[0] as f64 / cross[0] as f64;
                    ratio_count += 1;
                }
                samples.push(OrientationSample { trial, ordering, level: i + 1, cross_edges: cross[i], backward: stat[i], threshold });
            }
        }
    }
    Ok(ExperimentReport {
        n,
        edges: g.edges().len(),
        trials,
        orderings,
        samples,
        min_level_sum: if min_sum == usize::MAX { 0 } else { min_sum },
        min_backward: if min_back == usize::MAX { 0 } else { min_back },
        below_threshold: below,
        level1_ratio: if ratio_count == 0 { 0.0 } else { ratio_sum / ratio_count as f64 },
    })
}

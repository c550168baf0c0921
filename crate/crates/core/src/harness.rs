//! Desk-scale checks of the headline bounds, run as a battery with a
//! machine-readable report.
//!
//! Every check rebuilds its instances from the master seed, so a report is
//! reproducible from `(seed, budget)`. Checks are independent and run on
//! separate threads; the report lists them in [`CheckId`] order. Each check
//! also records per-instance bounds on `fas` and `fasd`, and the
//! [`CheckId::Inequalities`] check audits all of them together.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decompose3::decompose3;
use crate::delta3::good_g_coloring;
use crate::error::{Error, Result};
use crate::fas::{fas_exact, fas_weighted_exact, EXACT_LIMIT};
use crate::fas_sixth::fas_sixth;
use crate::fasd::{
    fasd_exact, good_coloring_search, refute_by_conflict_clique, verify_counting_bound, verify_good_coloring,
    ArcColoring, FasdValue, SearchOutcome,
};
use crate::generators::{
    circulant_graph, directed_cycle, gadget_co, gadget_dg, gadget_h3, gadget_h4, gadget_h5, paley_graph,
    random_orgraph, random_split_orgraph, random_two_regular_orgraph, random_weights, rotational_tournament,
    RandomOrgraph,
};
use crate::graph::{ArcId, Digraph};
use crate::ordering::backward_arcs;
use crate::spectral::{
    lambda_extremes, mixing_check, orientation_fas_lower_bound, random_orientation_experiment, DEFAULT_TOL,
};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Stack size for check threads; the degree-3 coloring recursion is deep.
const CHECK_STACK: usize = 256 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    D8,
    H5,
    H4,
    H3,
    Triples,
    Weighted,
    Colorings,
    Sixth,
    Counting,
    Mixing,
    LowerBound,
    Oracles,
    Inequalities,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::D8,
        CheckId::H5,
        CheckId::H4,
        CheckId::H3,
        CheckId::Triples,
        CheckId::Weighted,
        CheckId::Colorings,
        CheckId::Sixth,
        CheckId::Counting,
        CheckId::Mixing,
        CheckId::LowerBound,
        CheckId::Oracles,
        CheckId::Inequalities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::D8 => "d8",
            CheckId::H5 => "h5",
            CheckId::H4 => "h4",
            CheckId::H3 => "h3",
            CheckId::Triples => "triples",
            CheckId::Weighted => "weighted",
            CheckId::Colorings => "colorg",
            CheckId::Sixth => "fas6",
            CheckId::Counting => "counting",
            CheckId::Mixing => "mixing",
            CheckId::LowerBound => "lower-bound",
            CheckId::Oracles => "oracles",
            CheckId::Inequalities => "inequalities",
        }
    }

    /// The statement the check exercises.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::D8 => "fas(D_8) = 2 and a(D_8) = 15",
            CheckId::H5 => "fasd(5,4) < 4",
            CheckId::H4 => "fasd(4,6) < 6",
            CheckId::H3 => "fasd(3,9) < 9",
            CheckId::Triples => "max degree 4 orgraphs split into 3 feedback arc sets",
            CheckId::Weighted => "fas_w(D) <= w(D)/3 for max degree 4 orgraphs",
            CheckId::Colorings => "fasd(3,g) = g for g in {3,4,5}",
            CheckId::Sixth => "fas(D) <= a(D)/6 for max degree 3 and girth >= 6",
            CheckId::Counting => "fasd(D_g) <= g - floor(g/4 - 1)",
            CheckId::Mixing => "|e(S,T) - d|S||T|/n| <= lambda sqrt(|S||T|)",
            CheckId::LowerBound => "fas of an Eulerian orientation >= (d - lambda) n / 8",
            CheckId::Oracles => "exact solvers agree with exhaustive enumeration",
            CheckId::Inequalities => "2 <= fasd(D) <= g(D) and fas(D) <= a(D)/fasd(D)",
        }
    }

    /// Entry of the `fasd(Δ, g)` table the check certifies, if any.
    pub fn table_entry(self) -> Option<(&'static str, &'static str, &'static str)> {
        match self {
            CheckId::H5 => Some(("5", "4", "<= 3")),
            CheckId::H4 => Some(("4", "6", "<= 5")),
            CheckId::H3 => Some(("3", "9", "<= 8")),
            CheckId::Triples => Some(("4", "any", ">= 3")),
            CheckId::Colorings => Some(("3", "3, 4, 5", "= g")),
            CheckId::Counting => Some(("3", "even 4..16", "<= g - floor(g/4 - 1)")),
            _ => None,
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A search ran out of nodes before reaching a verdict.
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessOptions {
    pub seed: u64,
    /// Node budget for every backtracking search.
    pub budget: u64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions { seed: 0, budget: crate::fasd::DEFAULT_BUDGET }
    }
}

/// Bounds established for one processed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub label: String,
    pub arcs: usize,
    /// `None` for acyclic graphs.
    pub girth: Option<usize>,
    /// Colors of a verified good coloring.
    pub fasd_lower: Option<usize>,
    /// `t - 1` for a refuted `t`, or the exact value.
    pub fasd_upper: Option<usize>,
    /// Size of a verified feedback arc set.
    pub fas_upper: Option<usize>,
}

impl InstanceRecord {
    /// Starts a record with the girth and a verified 2-coloring from any
    /// ordering (backward arcs versus forward arcs).
    fn new(label: impl Into<String>, d: &Digraph) -> Self {
        let girth = d.girth().finite();
        let mut r = InstanceRecord { label: label.into(), arcs: d.arc_count(), girth, fasd_lower: None, fasd_upper: None, fas_upper: None };
        if girth.is_some() {
            let order: Vec<usize> = (0..d.n()).collect();
            let back = backward_arcs(d, &order).expect("identity ordering");
            let mut colors = vec![1; d.arc_count()];
            for a in back {
                colors[a] = 0;
            }
            r.coloring(d, &ArcColoring { t: 2, colors });
        }
        r
    }

    fn coloring(&mut self, d: &Digraph, c: &ArcColoring) -> &mut Self {
        if verify_good_coloring(d, c).is_ok() {
            self.fasd_lower = Some(self.fasd_lower.unwrap_or(0).max(c.t));
        }
        self
    }

    fn fas(&mut self, d: &Digraph, arcs: &[ArcId]) -> &mut Self {
        let (rest, _) = d.filter_arcs(|a| !arcs.contains(&a));
        if rest.is_acyclic() {
            self.fas_upper = Some(self.fas_upper.map_or(arcs.len(), |f| f.min(arcs.len())));
        }
        self
    }

    fn fasd_at_most(&mut self, t: usize) -> &mut Self {
        self.fasd_upper = Some(self.fasd_upper.map_or(t, |u| u.min(t)));
        self
    }

    /// Violations of the inequality suite implied by the recorded bounds.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Some(girth) = self.girth else { return out };
        match self.fasd_lower {
            None => out.push("no verified good 2-coloring of a cyclic graph".into()),
            Some(lo) => {
                if lo < 2 {
                    out.push(format!("fasd lower bound {lo} < 2"));
                }
                if lo > girth {
                    out.push(format!("good {lo}-coloring exceeds girth {girth}"));
                }
                if let Some(f) = self.fas_upper {
                    if f * lo > self.arcs {
                        out.push(format!("fas {f} > a/fasd = {}/{lo}", self.arcs));
                    }
                }
                if let Some(hi) = self.fasd_upper {
                    if hi < lo {
                        out.push(format!("fasd upper bound {hi} below verified {lo}"));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub name: String,
    pub anchor: String,
    pub status: CheckStatus,
    pub summary: String,
    pub elapsed_ms: u64,
    pub details: Value,
    pub instances: Vec<InstanceRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub budget: u64,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn budget_exceeded(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::BudgetExceeded)
    }

    /// Human-readable summary: one line per check, then the certified
    /// `fasd(Δ, g)` entries.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<13} {:<6} {:>9}  result", "check", "status", "ms");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::BudgetExceeded => "BUDGET",
            };
            let _ = writeln!(s, "{:<13} {:<6} {:>9}  {}", c.name, status, c.elapsed_ms, c.summary);
        }
        let entries: Vec<_> = self.checks.iter().filter_map(|c| c.id.table_entry().map(|e| (e, c.status))).collect();
        if !entries.is_empty() {
            let _ = writeln!(s, "\n{:<7} {:<12} {:<24} certified", "Delta", "g", "fasd(Delta, g)");
            for ((delta, g, value), status) in entries {
                let _ = writeln!(s, "{delta:<7} {g:<12} {value:<24} {}", if status == CheckStatus::Pass { "yes" } else { "no" });
            }
        }
        s
    }
}

struct Outcome {
    status: CheckStatus,
    summary: String,
    details: Value,
    instances: Vec<InstanceRecord>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>, details: Value, instances: Vec<InstanceRecord>) -> Self {
        let status = if pass { CheckStatus::Pass } else { CheckStatus::Fail };
        Outcome { status, summary: summary.into(), details, instances }
    }

    fn from_error(e: Error) -> Self {
        let status = match e {
            Error::BudgetExceeded { .. } => CheckStatus::BudgetExceeded,
            _ => CheckStatus::Fail,
        };
        Outcome { status, summary: format!("error: {e}"), details: json!({ "error": e.to_string() }), instances: vec![] }
    }
}

/// Runs the selected checks (all of them when `selected` is empty).
pub fn verify_paper(selected: &[CheckId], opts: HarnessOptions) -> VerifyReport {
    let mut ids: Vec<CheckId> = if selected.is_empty() { CheckId::ALL.to_vec() } else { selected.to_vec() };
    ids.sort_unstable();
    ids.dedup();
    let independent: Vec<CheckId> = ids.iter().copied().filter(|&c| c != CheckId::Inequalities).collect();
    let mut checks: Vec<CheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = independent
            .iter()
            .map(|&id| {
                std::thread::Builder::new()
                    .stack_size(CHECK_STACK)
                    .spawn_scoped(scope, move || run_check(id, opts))
                    .expect("spawn check thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    if ids.contains(&CheckId::Inequalities) {
        let start = Instant::now();
        let outcome = inequalities(&checks, opts).unwrap_or_else(Outcome::from_error);
        checks.push(report(CheckId::Inequalities, start, outcome));
    }
    VerifyReport { schema_version: SCHEMA_VERSION, seed: opts.seed, budget: opts.budget, checks }
}

fn report(id: CheckId, start: Instant, o: Outcome) -> CheckReport {
    CheckReport {
        id,
        name: id.name().into(),
        anchor: id.anchor().into(),
        status: o.status,
        summary: o.summary,
        elapsed_ms: start.elapsed().as_millis() as u64,
        details: o.details,
        instances: o.instances,
    }
}

fn run_check(id: CheckId, opts: HarnessOptions) -> CheckReport {
    let start = Instant::now();
    let result = match id {
        CheckId::D8 => d8(),
        CheckId::H5 => h5(opts),
        CheckId::H4 => split_gadget(gadget_h4(), 6, 7, "H4"),
        CheckId::H3 => split_gadget(gadget_h3(), 9, 10, "H3"),
        CheckId::Triples => triples(opts),
        CheckId::Weighted => weighted(opts),
        CheckId::Colorings => colorings(opts),
        CheckId::Sixth => sixth(opts),
        CheckId::Counting => counting(opts),
        CheckId::Mixing => mixing(opts),
        CheckId::LowerBound => lower_bound(opts),
        CheckId::Oracles => oracles(opts),
        CheckId::Inequalities => unreachable!("run after the other checks"),
    };
    report(id, start, result.unwrap_or_else(Outcome::from_error))
}

/// Seed of instance `i` in a check.
fn instance_seed(opts: HarnessOptions, i: usize) -> u64 {
    opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64)
}

fn d8() -> Result<Outcome> {
    let start = Instant::now();
    let d = gadget_dg(8)?;
    let cert = fas_exact(&d)?;
    let secs = start.elapsed().as_secs_f64();
    let mut rec = InstanceRecord::new("D8", &d);
    rec.fas(&d, &cert.arcs);
    let pass = cert.size() == 2 && d.arc_count() == 15 && rec.fas_upper == Some(2) && secs < 1.0;
    let details = json!({ "fas": cert.size(), "arcs": d.arc_count(), "feedback_arcs": cert.arcs, "ordering": cert.ordering, "seconds": secs });
    Ok(Outcome::new(pass, format!("fas = {}, a = {}", cert.size(), d.arc_count()), details, vec![rec]))
}

fn h5(opts: HarnessOptions) -> Result<Outcome> {
    let start = Instant::now();
    let h = gadget_h5();
    let search = good_coloring_search(&h, 4, opts.budget)?;
    let clique = refute_by_conflict_clique(&h, 4);
    let secs = start.elapsed().as_secs_f64();
    let clique_ok = clique.as_ref().is_some_and(|c| c.verify(&h) && c.arcs.len() == 5);
    let mut rec = InstanceRecord::new("H5", &h);
    if clique_ok {
        rec.fasd_at_most(3);
    }
    let verdict = match search.outcome {
        SearchOutcome::Unsat => "UNSAT",
        SearchOutcome::Sat(_) => "SAT",
        SearchOutcome::BudgetExceeded => "budget exceeded",
    };
    let pass = search.outcome == SearchOutcome::Unsat && clique_ok && secs < 10.0;
    let details = json!({ "t": 4, "search": verdict, "nodes": search.nodes, "clique": clique, "seconds": secs });
    let mut out = Outcome::new(pass, format!("t = 4: {verdict}, clique of {}", clique.map_or(0, |c| c.arcs.len())), details, vec![rec]);
    if search.outcome == SearchOutcome::BudgetExceeded {
        out.status = CheckStatus::BudgetExceeded;
    }
    Ok(out)
}

/// Conflict-clique refutation at `t` using only the first `split_arcs` arcs
/// (the chain arcs of the split construction).
fn split_gadget(h: Digraph, t: usize, split_arcs: usize, label: &str) -> Result<Outcome> {
    let start = Instant::now();
    let clique = refute_by_conflict_clique(&h, t);
    let secs = start.elapsed().as_secs_f64();
    let ok = clique.as_ref().is_some_and(|c| c.verify(&h) && c.arcs.len() == t + 1 && c.arcs.iter().all(|&a| a < split_arcs));
    let mut rec = InstanceRecord::new(label, &h);
    if ok {
        rec.fasd_at_most(t - 1);
    }
    let pass = ok && h.girth().finite() == Some(t) && secs < 60.0;
    let details = json!({ "t": t, "girth": h.girth().finite(), "max_degree": h.max_degree(), "clique": clique, "seconds": secs });
    let summary = format!("t = {t}: clique of {} split arcs", clique.map_or(0, |c| c.arcs.len()));
    Ok(Outcome::new(pass, summary, details, vec![rec]))
}

/// Random digon-free orgraphs of maximum degree 4: maximal random ones,
/// sparse ones, and 2-in 2-out ones.
fn degree_four_instance(opts: HarnessOptions, i: usize, max_n: usize) -> Digraph {
    let seed = instance_seed(opts, i);
    let n = 1 + i % max_n;
    match i % 3 {
        0 => random_orgraph(n, 4, 3, seed),
        1 => RandomOrgraph { n, max_degree: 4, min_girth: 3, max_arcs: Some(n + i % (n + 1)) }.generate(seed),
        _ => random_two_regular_orgraph(n.max(5), false, seed).unwrap_or_else(|_| random_orgraph(n, 4, 3, seed)),
    }
}

fn triples(opts: HarnessOptions) -> Result<Outcome> {
    const COUNT: usize = 500;
    let mut good = 0;
    let mut failures = Vec::new();
    let mut records = Vec::new();
    for i in 0..COUNT {
        let d = degree_four_instance(opts, i, 60);
        let mut rec = InstanceRecord::new(format!("triples/{i}"), &d);
        match decompose3(&d) {
            Ok(dec) => {
                let mut colors = vec![usize::MAX; d.arc_count()];
                let mut partition = true;
                for (c, class) in dec.classes.iter().enumerate() {
                    for &a in class {
                        partition &= colors[a] == usize::MAX;
                        colors[a] = c;
                    }
                }
                partition &= colors.iter().all(|&c| c != usize::MAX);
                let coloring = ArcColoring { t: 3, colors };
                if partition && verify_good_coloring(&d, &coloring).is_ok() {
                    good += 1;
                    rec.coloring(&d, &coloring);
                    for class in &dec.classes {
                        rec.fas(&d, class);
                    }
                } else {
                    failures.push(json!({ "instance": i, "reason": "classes are not three disjoint feedback arc sets" }));
                }
            }
            Err(e) => failures.push(json!({ "instance": i, "reason": e.to_string() })),
        }
        records.push(rec);
    }
    let details = json!({ "instances": COUNT, "good": good, "failures": failures });
    Ok(Outcome::new(good == COUNT, format!("{good}/{COUNT} GOOD"), details, records))
}

fn weighted(opts: HarnessOptions) -> Result<Outcome> {
    const COUNT: usize = 200;
    const EPS: f64 = 1e-9;
    let mut violations = Vec::new();
    let mut exact_checked = 0;
    for i in 0..COUNT {
        let d = degree_four_instance(opts, 10_000 + i, 16);
        let d = Digraph::with_weights(d.n(), d.arcs().to_vec(), random_weights(d.arc_count(), instance_seed(opts, i)))?;
        let w = d.total_weight();
        let dec = decompose3(&d)?;
        let min_class = dec.classes.iter().map(|c| c.iter().map(|&a| d.weight(a)).sum::<f64>()).fold(f64::INFINITY, f64::min);
        if min_class > w / 3.0 + EPS {
            violations.push(json!({ "instance": i, "min_class": min_class, "total": w }));
        }
        let exact = fas_weighted_exact(&d)?;
        exact_checked += 1;
        if exact.value > w / 3.0 + EPS || exact.value > min_class + EPS {
            violations.push(json!({ "instance": i, "fas_w": exact.value, "min_class": min_class, "total": w }));
        }
    }
    let details = json!({ "instances": COUNT, "exact_compared": exact_checked, "violations": violations });
    let summary = format!("{COUNT} instances, {} violations", violations.len());
    Ok(Outcome::new(violations.is_empty(), summary, details, vec![]))
}

fn colorings(opts: HarnessOptions) -> Result<Outcome> {
    const PER_GIRTH: usize = 300;
    let mut per_girth = Vec::new();
    let mut records = Vec::new();
    let mut pass = true;
    for g in 3..=5 {
        let mut good = 0;
        for i in 0..PER_GIRTH {
            let n = 3 + i % 50;
            let d = random_orgraph(n, 3, g, instance_seed(opts, 1000 * g + i));
            let mut rec = InstanceRecord::new(format!("colorg/g{g}/{i}"), &d);
            if let Ok(run) = good_g_coloring(&d, g) {
                if verify_good_coloring(&d, &run.coloring).is_ok() && run.coloring.t == g {
                    good += 1;
                    rec.coloring(&d, &run.coloring);
                }
            }
            records.push(rec);
        }
        let cycle = directed_cycle(g)?;
        let cert = fasd_exact(&cycle, opts.budget)?;
        let cycle_ok = cert.value == FasdValue::Exact(g);
        let mut rec = InstanceRecord::new(format!("C{g}"), &cycle);
        if let Some(w) = &cert.witness {
            rec.coloring(&cycle, w);
        }
        rec.fasd_at_most(g);
        records.push(rec);
        pass &= good == PER_GIRTH && cycle_ok;
        per_girth.push(json!({ "g": g, "instances": PER_GIRTH, "good": good, "fasd_cycle": cert.value }));
    }
    let summary = per_girth.iter().map(|v| format!("g={}: {}/{}", v["g"], v["good"], PER_GIRTH)).collect::<Vec<_>>().join(", ");
    Ok(Outcome::new(pass, summary, json!({ "girths": per_girth }), records))
}

fn sixth(opts: HarnessOptions) -> Result<Outcome> {
    const COUNT: usize = 200;
    let mut failures = Vec::new();
    let mut compared = 0;
    let mut contracted = 0;
    let mut records = Vec::new();
    for i in 0..COUNT {
        let seed = instance_seed(opts, i);
        let d = match i % 2 {
            0 => random_orgraph(6 + i % 50, 3, 6, seed),
            _ => random_split_orgraph(5 + i % 16, seed).unwrap_or_else(|_| random_orgraph(6 + i % 50, 3, 6, seed)),
        };
        let mut rec = InstanceRecord::new(format!("fas6/{i}"), &d);
        let r = match fas_sixth(&d) {
            Ok(r) => r,
            Err(e) => {
                failures.push(json!({ "instance": i, "reason": e.to_string() }));
                records.push(rec);
                continue;
            }
        };
        contracted += usize::from(r.steps.iter().any(|s| matches!(s, crate::fas_sixth::SixthStep::Contracted { .. })));
        rec.fas(&d, &r.arcs);
        if rec.fas_upper != Some(r.arcs.len()) || 6 * r.arcs.len() > d.arc_count() {
            failures.push(json!({ "instance": i, "reason": "not an acyclic sixth", "size": r.arcs.len(), "arcs": d.arc_count() }));
        }
        if strong_parts_fit(&d) && d.n() <= EXACT_LIMIT {
            compared += 1;
            let exact = fas_exact(&d)?;
            if exact.size() > r.arcs.len() {
                failures.push(json!({ "instance": i, "reason": "smaller than the exact optimum" }));
            }
            rec.fas(&d, &exact.arcs);
        }
        records.push(rec);
    }
    let c6 = fas_exact(&directed_cycle(6)?)?.size();
    let details = json!({ "instances": COUNT, "exact_compared": compared, "with_contraction": contracted, "fas_c6": c6, "failures": failures });
    let pass = failures.is_empty() && c6 == 1;
    Ok(Outcome::new(pass, format!("{}/{COUNT} within a/6, fas(C6) = {c6}", COUNT - failures.len()), details, records))
}

fn strong_parts_fit(d: &Digraph) -> bool {
    crate::graph::strong_components(d).iter().all(|c| c.len() <= EXACT_LIMIT)
}

fn counting(opts: HarnessOptions) -> Result<Outcome> {
    let mut bounds = Vec::new();
    let mut records = Vec::new();
    let mut pass = true;
    for g in (4..=16).step_by(2) {
        let d = gadget_dg(g)?;
        let b = verify_counting_bound(&d, g)?;
        let expected = g - (g / 4 - 1);
        pass &= b.bound == expected;
        let mut rec = InstanceRecord::new(format!("D{g}"), &d);
        rec.fasd_at_most(b.bound);
        records.push(rec);
        bounds.push(json!({ "g": g, "arcs": d.arc_count(), "bound": b.bound, "expected": expected }));
    }
    let start = Instant::now();
    let d8 = gadget_dg(8)?;
    let cert = fasd_exact(&d8, opts.budget)?;
    let secs = start.elapsed().as_secs_f64();
    let witness_ok = cert.witness.as_ref().is_some_and(|w| verify_good_coloring(&d8, w).is_ok());
    let mut out_status = None;
    let d8_value = match cert.value {
        FasdValue::Exact(v) => {
            pass &= v <= 7 && witness_ok && secs < 300.0;
            let rec = records.iter_mut().find(|r| r.label == "D8").expect("D8 in the sweep");
            rec.fasd_at_most(v);
            if let Some(w) = &cert.witness {
                rec.coloring(&d8, w);
            }
            v.to_string()
        }
        FasdValue::Bracket { lo, hi } => {
            out_status = Some(CheckStatus::BudgetExceeded);
            format!("{lo}..={hi}")
        }
        FasdValue::Infinite => {
            pass = false;
            "infinite".into()
        }
    };
    let details = json!({ "bounds": bounds, "fasd_d8": cert.value, "attempts": cert.attempts, "seconds": secs });
    let mut out = Outcome::new(pass, format!("bounds match for g = 4..16, fasd(D8) = {d8_value}"), details, records);
    if let Some(s) = out_status {
        out.status = s;
    }
    Ok(out)
}

fn mixing(opts: HarnessOptions) -> Result<Outcome> {
    const SAMPLES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut per_graph = Vec::new();
    let mut pass = true;
    for q in [13usize, 17] {
        let g = paley_graph(q)?;
        let eig = lambda_extremes(&g, DEFAULT_TOL)?;
        let closed = (1.0 + (q as f64).sqrt()) / 2.0;
        let eig_ok = (eig.lambda - closed).abs() < 1e-6 && (eig.inner_min + closed).abs() < 1e-6 && (eig.inner_max - (closed - 1.0)).abs() < 1e-6;
        let all: Vec<usize> = (0..q).collect();
        let mut violations = 0;
        let mut worst: f64 = 0.0;
        for _ in 0..SAMPLES {
            let mut pick = || {
                let mut v = all.clone();
                v.shuffle(&mut rng);
                v.truncate(rng.gen_range(0..=q));
                v
            };
            let (s, t) = (pick(), pick());
            let m = mixing_check(&g, &s, &t, eig.lambda)?;
            violations += usize::from(!m.holds);
            if m.bound > 0.0 {
                worst = worst.max(m.deviation / m.bound);
            }
        }
        pass &= eig_ok && violations == 0;
        per_graph.push(json!({
            "q": q, "lambda": eig.lambda, "closed_form": closed, "inner_max": eig.inner_max,
            "inner_min": eig.inner_min, "eigen_match": eig_ok, "samples": SAMPLES,
            "violations": violations, "max_ratio": worst,
        }));
    }
    let summary = per_graph.iter().map(|v| format!("Paley({}): {} violations", v["q"], v["violations"])).collect::<Vec<_>>().join(", ");
    Ok(Outcome::new(pass, summary, json!({ "graphs": per_graph }), vec![]))
}

fn lower_bound(opts: HarnessOptions) -> Result<Outcome> {
    let g = circulant_graph(18, &(1..=8).collect::<Vec<_>>())?;
    let eig = lambda_extremes(&g, DEFAULT_TOL)?;
    let d = g.eulerian_orient()?;
    let bound = orientation_fas_lower_bound(&d, eig.lambda)?;
    let exact = fas_exact(&d)?;
    let mut rec = InstanceRecord::new("circulant(18, 1..8)", &d);
    rec.fas(&d, &exact.arcs);
    let pass = exact.size() >= bound.guaranteed;
    let experiment_graph = circulant_graph(16, &[1, 2, 5])?;
    let exp = random_orientation_experiment(&experiment_graph, 20, 10, opts.seed)?;
    let details = json!({
        "n": 18, "degree": bound.degree, "lambda": eig.lambda, "bound": bound.bound,
        "guaranteed": bound.guaranteed, "fas": exact.size(),
        "experiment": {
            "n": exp.n, "trials": exp.trials, "orderings": exp.orderings, "min_backward": exp.min_backward,
            "min_level_sum": exp.min_level_sum, "below_threshold": exp.below_threshold, "level1_ratio": exp.level1_ratio,
        },
    });
    let summary = format!("fas = {} >= ceil((d - lambda) n / 8) = {}", exact.size(), bound.guaranteed);
    Ok(Outcome::new(pass, summary, details, vec![rec]))
}

/// Minimum backward arcs over all orderings.
fn factorial_fas(d: &Digraph) -> usize {
    fn go(d: &Digraph, placed: &mut Vec<bool>, pos: &mut Vec<usize>, depth: usize, best: &mut usize) {
        let n = d.n();
        if depth == n {
            let back = d.arcs().iter().filter(|&&(u, v)| pos[u] > pos[v]).count();
            *best = (*best).min(back);
            return;
        }
        for v in 0..n {
            if !placed[v] {
                placed[v] = true;
                pos[v] = depth;
                go(d, placed, pos, depth + 1, best);
                placed[v] = false;
            }
        }
    }
    let mut best = usize::MAX;
    go(d, &mut vec![false; d.n()], &mut vec![0; d.n()], 0, &mut best);
    best
}

/// Largest `t` such that some map of arcs to `0..t` meets every color on
/// every cycle, by enumerating all `t^m` maps.
fn enumerated_fasd(d: &Digraph) -> Option<usize> {
    let cycles: Vec<u64> = d
        .enumerate_cycles(None, usize::MAX)
        .cycles
        .iter()
        .map(|c| d.cycle_arcs(c).expect("enumerated cycle").iter().fold(0u64, |m, &a| m | 1 << a))
        .collect();
    let girth = cycles.iter().map(|c| c.count_ones() as usize).min()?;
    let m = d.arc_count();
    (1..=girth).rev().find(|&t| {
        let mut colors = vec![0usize; m];
        loop {
            let mut class = vec![0u64; t];
            for (a, &c) in colors.iter().enumerate() {
                class[c] |= 1 << a;
            }
            if cycles.iter().all(|&cy| class.iter().all(|&k| k & cy != 0)) {
                return true;
            }
            let Some(i) = colors.iter().position(|&c| c + 1 < t) else { return false };
            colors[..i].iter_mut().for_each(|c| *c = 0);
            colors[i] += 1;
        }
    })
}

/// Random orgraph on `n` vertices with `m` arcs in random directions.
fn random_sparse_orgraph(n: usize, m: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    let arcs = pairs.into_iter().map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
    Digraph::new(n, arcs).expect("distinct unordered pairs")
}

fn oracles(opts: HarnessOptions) -> Result<Outcome> {
    let mut fas_mismatch = Vec::new();
    for i in 0..200 {
        let n = 1 + i % 8;
        let d = random_sparse_orgraph(n, (i * 7) % (n * (n - 1) / 2 + 1), instance_seed(opts, i));
        let (exact, brute) = (fas_exact(&d)?.size(), factorial_fas(&d));
        if exact != brute {
            fas_mismatch.push(json!({ "instance": i, "exact": exact, "enumerated": brute }));
        }
    }
    let mut fasd_mismatch = Vec::new();
    let (mut corpus, mut cyclic, mut i) = (0, 0, 0usize);
    while corpus < 100 {
        let d = random_sparse_orgraph(3 + i % 6, 3 + i % 8, instance_seed(opts, 5000 + i));
        i += 1;
        if d.arc_count() > 10 {
            continue;
        }
        corpus += 1;
        let exact = match fasd_exact(&d, opts.budget)?.value {
            FasdValue::Exact(v) => Some(v),
            FasdValue::Infinite => None,
            FasdValue::Bracket { .. } => return Err(Error::BudgetExceeded { budget: opts.budget }),
        };
        cyclic += usize::from(exact.is_some());
        let brute = enumerated_fasd(&d);
        if exact != brute {
            fasd_mismatch.push(json!({ "arcs": d.arcs(), "exact": exact, "enumerated": brute }));
        }
    }
    let details = json!({
        "fas_instances": 200, "fas_mismatches": fas_mismatch,
        "fasd_instances": corpus, "fasd_cyclic": cyclic, "fasd_mismatches": fasd_mismatch,
    });
    let pass = fas_mismatch.is_empty() && fasd_mismatch.is_empty();
    let summary = format!("fas 200/200 n<=8: {} mismatches; fasd 100 with <=10 arcs: {} mismatches", fas_mismatch.len(), fasd_mismatch.len());
    Ok(Outcome::new(pass, summary, details, vec![]))
}

/// Small named instances with exact `fas` and `fasd`, always audited.
fn inequality_battery(opts: HarnessOptions) -> Result<Vec<InstanceRecord>> {
    let mut named: Vec<(String, Digraph)> = Vec::new();
    for n in 2..=8 {
        named.push((format!("C{n}"), directed_cycle(n)?));
    }
    for g in [4, 6, 8, 10] {
        named.push((format!("D{g}"), gadget_dg(g)?));
    }
    for n in [3, 5, 7] {
        named.push((format!("T{n}"), rotational_tournament(n)?));
    }
    named.push(("Co(5)".into(), gadget_co(5)?));
    named.push(("H5".into(), gadget_h5()));
    let mut out = Vec::new();
    for (label, d) in named {
        let mut rec = InstanceRecord::new(label, &d);
        let fas = fas_exact(&d)?;
        rec.fas(&d, &fas.arcs);
        let cert = fasd_exact(&d, opts.budget)?;
        if let Some(w) = &cert.witness {
            rec.coloring(&d, w);
        }
        match cert.value {
            FasdValue::Exact(v) => {
                rec.fasd_at_most(v);
            }
            FasdValue::Bracket { hi, .. } => {
                rec.fasd_at_most(hi);
            }
            FasdValue::Infinite => {}
        }
        out.push(rec);
    }
    Ok(out)
}

fn inequalities(previous: &[CheckReport], opts: HarnessOptions) -> Result<Outcome> {
    let battery = inequality_battery(opts)?;
    let mut violations = Vec::new();
    let mut audited = 0;
    for rec in previous.iter().flat_map(|c| c.instances.iter()).chain(battery.iter()) {
        audited += 1;
        for v in rec.violations() {
            violations.push(json!({ "instance": rec.label, "violation": v }));
        }
    }
    let details = json!({ "audited": audited, "violations": violations });
    Ok(Outcome::new(violations.is_empty(), format!("{audited} instances, {} violations", violations.len()), details, battery))
}

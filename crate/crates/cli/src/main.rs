//! `fasd`: command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad usage or bad input,
//! 3 a search budget ran out.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fasd::decompose3::decompose3;
use fasd::delta3::good_g_coloring;
use fasd::fas::{fas_exact, fas_upper_heuristic, fas_weighted_exact, HeuristicOptions};
use fasd::fas_sixth::fas_sixth;
use fasd::fasd::{fasd_exact, good_coloring_search, refute_by_conflict_clique, FasdValue, SearchOutcome, DEFAULT_BUDGET};
use fasd::fvs::fvs_exact;
use fasd::generators as gen;
use fasd::harness::{verify_paper, CheckId, HarnessOptions};
use fasd::io::{parse_digraph, parse_undirected, to_dot, write_digraph, write_undirected};
use fasd::ordering::{backward_arcs, backward_weight, verify_good_triple};
use fasd::spectral::{lambda_extremes, mixing_check, random_orientation_experiment, DEFAULT_TOL};
use fasd::{Digraph, Error};

/// Version tag written into every JSON certificate.
const CERTIFICATE_SCHEMA: u32 = 1;

/// The degree-3 coloring recursion and the exact searches recurse deeply.
const MAIN_STACK: usize = 512 << 20;

#[derive(Parser)]
#[command(name = "fasd", version, about = "Feedback arc sets and their disjoint decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Search node budget.
    #[arg(long, env = "FASD_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph family or random instance in the text format.
    Gen {
        family: Family,
        /// Vertex count (cycle, tournament, random, two-regular, split, circulant) or order q (paley).
        #[arg(long)]
        n: Option<usize>,
        /// Girth of the D_g gadget, or cycle count of the odd digon cycle.
        #[arg(long)]
        g: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        min_girth: usize,
        /// Circulant jumps, comma separated.
        #[arg(long, value_delimiter = ',')]
        jumps: Vec<usize>,
        /// Avoid underlying triangles (two-regular).
        #[arg(long)]
        triangle_free: bool,
        /// Attach random weights.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a DOT rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Minimum feedback arc set.
    Fas {
        file: PathBuf,
        #[arg(long)]
        weighted: bool,
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Largest number of disjoint feedback arc sets, or a good coloring with `--t` colors.
    Fasd {
        file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Split a digon-free graph of maximum degree 4 into three feedback arc sets.
    Decompose3 {
        file: PathBuf,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        emit_classes: Option<PathBuf>,
        /// DOT rendering with arcs colored by class.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Good g-coloring of a graph of maximum degree 3 and girth at least g.
    Colorg {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
        g: u8,
    },
    /// Feedback arc set of at most a/6 arcs for maximum degree 3 and girth at least 6.
    Fas6 { file: PathBuf },
    /// Minimum feedback vertex set.
    Fvs {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Extreme nontrivial eigenvalues of a regular undirected graph.
    Spectral { file: PathBuf },
    /// Expander mixing inequality on random vertex-set pairs.
    Mixing {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Backward arcs of random orientations under random orderings.
    OrientExp {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        orderings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the battery of desk-scale checks.
    VerifyPaper {
        /// Checks to run; all when omitted.
        #[arg(long = "check", value_parser = parse_check)]
        checks: Vec<CheckId>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArg,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Tournament,
    H3,
    H4,
    H5,
    Dg,
    Co,
    CoPrime,
    Paley,
    Circulant,
    Random,
    TwoRegular,
    Split,
}

fn parse_check(s: &str) -> Result<CheckId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{s}`; expected one of {}", names.join(", "))
    })
}

/// A finished command: exit status plus text for stdout.
struct Done {
    code: u8,
    stdout: String,
}

impl Done {
    fn ok(stdout: impl Into<String>) -> Self {
        Done { code: 0, stdout: stdout.into() }
    }

    fn json(v: &Value) -> Self {
        Done::ok(format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new().stack_size(MAIN_STACK).spawn(move || run(cli)).expect("spawn worker");
    match worker.join().expect("worker panicked") {
        Ok(done) => {
            print!("{}", done.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::InternalGap(_)) => 1,
        _ => 2,
    }
}

fn read_digraph(path: &Path) -> anyhow::Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn read_undirected(path: &Path) -> anyhow::Result<fasd::UndirectedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_undirected(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn certificate(kind: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": CERTIFICATE_SCHEMA, "kind": kind });
    if let (Some(map), Value::Object(extra)) = (v.as_object_mut(), body) {
        map.extend(extra);
    }
    v
}

fn need(v: Option<usize>, flag: &str) -> anyhow::Result<usize> {
    v.ok_or_else(|| Error::Precondition(format!("this family needs --{flag}")).into())
}

fn run(cli: Cli) -> anyhow::Result<Done> {
    match cli.command {
        Command::Gen { family, n, g, max_degree, min_girth, jumps, triangle_free, weighted, seed, output, dot } => {
            let d = match family {
                Family::Paley | Family::Circulant => {
                    let n = need(n, "n")?;
                    let u = match family {
                        Family::Paley => gen::paley_graph(n)?,
                        _ => gen::circulant_graph(n, &jumps)?,
                    };
                    let text = write_undirected(&u);
                    return match output {
                        Some(p) => write_file(&p, &text).map(|_| Done::ok("")),
                        None => Ok(Done::ok(text)),
                    };
                }
                Family::Cycle => gen::directed_cycle(need(n, "n")?)?,
                Family::Tournament => gen::rotational_tournament(need(n, "n")?)?,
                Family::H3 => gen::gadget_h3(),
                Family::H4 => gen::gadget_h4(),
                Family::H5 => gen::gadget_h5(),
                Family::Dg => gen::gadget_dg(need(g, "g")?)?,
                Family::Co => gen::gadget_co(need(g, "g")?)?,
                Family::CoPrime => gen::gadget_co_prime(need(g, "g")?)?,
                Family::Random => gen::random_orgraph(need(n, "n")?, max_degree, min_girth, seed),
                Family::TwoRegular => gen::random_two_regular_orgraph(need(n, "n")?, triangle_free, seed)?,
                Family::Split => gen::random_split_orgraph(need(n, "n")?, seed)?,
            };
            let d = if weighted { Digraph::with_weights(d.n(), d.arcs().to_vec(), gen::random_weights(d.arc_count(), seed))? } else { d };
            if let Some(p) = dot {
                write_file(&p, &to_dot(&d, None))?;
            }
            let text = write_digraph(&d);
            match output {
                Some(p) => write_file(&p, &text).map(|_| Done::ok("")),
                None => Ok(Done::ok(text)),
            }
        }
        Command::Fas { file, weighted, exact: _, heuristic, seed } => {
            let d = read_digraph(&file)?;
            let d = if weighted { d } else { d.unweighted() };
            let (method, value, ordering, arcs) = if heuristic {
                let order = fas_upper_heuristic(&d, HeuristicOptions { seed, ..Default::default() });
                let value = backward_weight(&d, &order)?;
                let arcs = backward_arcs(&d, &order)?;
                ("heuristic", value, order, arcs)
            } else {
                let cert = if weighted { fas_weighted_exact(&d)? } else { fas_exact(&d)? };
                ("exact", cert.value, cert.ordering, cert.arcs)
            };
            Ok(Done::json(&certificate("fas", json!({ "method": method, "value": value, "ordering": ordering, "arcs": arcs }))))
        }
        Command::Fasd { file, t, budget, certificate: out } => {
            let d = read_digraph(&file)?;
            let (cert, code) = match t {
                Some(t) => fixed_t(&d, t, budget.budget)?,
                None => {
                    let c = fasd_exact(&d, budget.budget)?;
                    let code = if matches!(c.value, FasdValue::Bracket { .. }) { 3 } else { 0 };
                    (certificate("fasd", serde_json::to_value(&c)?), code)
                }
            };
            finish(cert, out.as_deref(), code)
        }
        Command::Decompose3 { file, verify, emit_classes, dot } => {
            let d = read_digraph(&file)?;
            let dec = decompose3(&d)?;
            let verified = verify.then(|| verify_good_triple(&d, &dec.triple).is_ok());
            let body = certificate(
                "decompose3",
                json!({ "orderings": dec.triple.orders(), "classes": dec.classes, "cases": dec.cases, "verified": verified }),
            );
            if let Some(p) = dot {
                let mut class = vec![0usize; d.arc_count()];
                for (i, c) in dec.classes.iter().enumerate() {
                    for &a in c {
                        class[a] = i;
                    }
                }
                write_file(&p, &to_dot(&d, Some(&class)))?;
            }
            let code = if verified == Some(false) { 1 } else { 0 };
            finish(body, emit_classes.as_deref(), code)
        }
        Command::Colorg { file, g } => {
            let d = read_digraph(&file)?;
            let run = good_g_coloring(&d, g as usize)?;
            let colors: serde_json::Map<String, Value> =
                run.coloring.colors.iter().enumerate().map(|(a, &c)| (a.to_string(), json!(c))).collect();
            Ok(Done::json(&certificate("colorg", json!({ "g": g, "colors": colors, "trace": run.trace }))))
        }
        Command::Fas6 { file } => {
            let d = read_digraph(&file)?;
            let r = fas_sixth(&d)?;
            Ok(Done::json(&certificate("fas6", json!({ "arcs": r.arcs, "size": r.arcs.len(), "total_arcs": d.arc_count(), "steps": r.steps }))))
        }
        Command::Fvs { file, budget } => {
            let d = read_digraph(&file)?;
            let c = fvs_exact(&d, budget.budget)?;
            Ok(Done::json(&certificate("fvs", serde_json::to_value(&c)?)))
        }
        Command::Spectral { file } => {
            let g = read_undirected(&file)?;
            let r = lambda_extremes(&g, DEFAULT_TOL)?;
            let mut v = serde_json::to_value(&r)?;
            v["ramanujan"] = json!(r.is_ramanujan());
            Ok(Done::json(&certificate("spectral", v)))
        }
        Command::Mixing { file, samples, seed } => mixing(&read_undirected(&file)?, samples, seed),
        Command::OrientExp { file, trials, orderings, seed, csv } => {
            let g = read_undirected(&file)?;
            let r = random_orientation_experiment(&g, trials, orderings, seed)?;
            if let Some(p) = csv {
                let mut w = csv::Writer::from_path(&p).with_context(|| format!("writing {}", p.display()))?;
                for s in &r.samples {
                    w.serialize(s)?;
                }
                w.flush()?;
            }
            let summary = json!({
                "n": r.n, "edges": r.edges, "trials": r.trials, "orderings": r.orderings,
                "min_level_sum": r.min_level_sum, "min_backward": r.min_backward,
                "below_threshold": r.below_threshold, "level1_ratio": r.level1_ratio,
            });
            Ok(Done::json(&certificate("orient-exp", summary)))
        }
        Command::VerifyPaper { checks, seed, budget, json: out } => {
            let report = verify_paper(&checks, HarnessOptions { seed, budget: budget.budget });
            eprint!("{}", report.table());
            let code = if !report.passed() {
                if report.checks.iter().any(|c| c.status == fasd::harness::CheckStatus::Fail) { 1 } else { 3 }
            } else {
                0
            };
            finish(serde_json::to_value(&report)?, out.as_deref(), code)
        }
    }
}

/// Writes `body` to `path` when given, otherwise to stdout.
fn finish(body: Value, path: Option<&Path>, code: u8) -> anyhow::Result<Done> {
    match path {
        Some(p) => {
            write_file(p, &serde_json::to_string_pretty(&body)?)?;
            Ok(Done { code, stdout: String::new() })
        }
        None => Ok(Done { code, ..Done::json(&body) }),
    }
}

fn fixed_t(d: &Digraph, t: usize, budget: u64) -> anyhow::Result<(Value, u8)> {
    if let Some(clique) = refute_by_conflict_clique(d, t) {
        return Ok((certificate("fasd-t", json!({ "t": t, "outcome": "unsat", "conflict_clique": clique })), 0));
    }
    let r = good_coloring_search(d, t, budget)?;
    let (outcome, coloring, code) = match r.outcome {
        SearchOutcome::Sat(c) => ("sat", Some(c), 0),
        SearchOutcome::Unsat => ("unsat", None, 0),
        SearchOutcome::BudgetExceeded => ("budget-exceeded", None, 3),
    };
    let colors = coloring.map(|c| c.colors.iter().enumerate().map(|(a, &x)| (a.to_string(), json!(x))).collect::<serde_json::Map<_, _>>());
    Ok((certificate("fasd-t", json!({ "t": t, "outcome": outcome, "nodes": r.nodes, "colors": colors })), code))
}

fn mixing(g: &fasd::UndirectedGraph, samples: usize, seed: u64) -> anyhow::Result<Done> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let n = g.n();
    let lambda = lambda_extremes(g, DEFAULT_TOL)?.lambda;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut violations, mut worst) = (0usize, 0.0f64);
    for _ in 0..samples {
        let mut pick = || {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            v.truncate(rng.gen_range(0..=n));
            v
        };
        let (s, t) = (pick(), pick());
        let m = mixing_check(g, &s, &t, lambda)?;
        violations += usize::from(!m.holds);
        if m.bound > 0.0 {
            worst = worst.max(m.deviation / m.bound);
        }
    }
    let body = certificate("mixing", json!({ "n": n, "lambda": lambda, "samples": samples, "seed": seed, "violations": violations, "max_ratio": worst }));
    Ok(Done { code: u8::from(violations > 0), ..Done::json(&body) })
}

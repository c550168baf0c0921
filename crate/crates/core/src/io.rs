//! Plain-text edge lists and DOT export.
//!
//! The text format is line based. `#` starts a comment that runs to the end
//! of the line; blank lines are ignored. The first remaining line holds
//! `n m`, followed by exactly `m` lines `u v` or `u v w` with 0-based
//! vertices. Either every arc carries a weight or none does.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph, Vertex};

struct EdgeList {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    weights: Option<Vec<f64>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = fields[0].parse().map_err(|_| parse_err(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1].parse().map_err(|_| parse_err(hline, format!("bad arc count `{}`", fields[1])))?;

    let mut pairs = Vec::with_capacity(m);
    let mut weights: Vec<f64> = Vec::new();
    let mut weighted: Option<bool> = None;
    for (line, body) in lines {
        if pairs.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} arcs")));
        }
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 2 && f.len() != 3 {
            return Err(parse_err(line, "expected `u v` or `u v w`"));
        }
        let has_w = f.len() == 3;
        if *weighted.get_or_insert(has_w) != has_w {
            return Err(parse_err(line, "weights must be given for all arcs or for none"));
        }
        let endpoint = |s: &str| -> Result<Vertex> {
            let v: Vertex = s.parse().map_err(|_| parse_err(line, format!("bad vertex `{s}`")))?;
            if v >= n {
                return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let (u, v) = (endpoint(f[0])?, endpoint(f[1])?);
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if has_w {
            let w: f64 = f[2].parse().map_err(|_| parse_err(line, format!("bad weight `{}`", f[2])))?;
            if !w.is_finite() || w < 0.0 {
                return Err(parse_err(line, format!("weight {w} must be finite and nonnegative")));
            }
            weights.push(w);
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(parse_err(text.lines().count().max(1), format!("declared {m} arcs, found {}", pairs.len())));
    }
    let weights = (weighted == Some(true)).then_some(weights);
    Ok(EdgeList { n, pairs, weights })
}

/// Parses a digraph, rejecting self-loops and repeated arcs.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let list = parse_edge_list(text)?;
    let res = match list.weights {
        Some(w) => Digraph::with_weights(list.n, list.pairs, w),
        None => Digraph::new(list.n, list.pairs),
    };
    res.map_err(|e| match e {
        Error::DuplicateArc { arc, u, v } => {
            parse_err(data_line(text, arc), format!("arc ({u}, {v}) repeated"))
        }
        other => other,
    })
}

/// Parses an undirected graph; each edge is listed once as `u v`. Weights are not allowed.
pub fn parse_undirected(text: &str) -> Result<UndirectedGraph> {
    let list = parse_edge_list(text)?;
    if list.weights.is_some() {
        return Err(parse_err(1, "undirected graphs take no weights"));
    }
    UndirectedGraph::new(list.n, list.pairs).map_err(|e| match e {
        Error::DuplicateArc { arc, u, v } => parse_err(data_line(text, arc), format!("edge {{{u}, {v}}} repeated")),
        other => other,
    })
}

/// Line number of the `index`-th data line (after the header).
fn data_line(text: &str, index: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty())
        .nth(index + 1)
        .map_or(0, |(i, _)| i + 1)
}

/// Canonical text form. `parse_digraph(&write_digraph(d)) == d`.
pub fn write_digraph(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.n(), d.arc_count());
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        match d.weights() {
            Some(w) => writeln!(s, "{u} {v} {}", w[a]),
            None => writeln!(s, "{u} {v}"),
        }
        .expect("writing to a String cannot fail");
    }
    s
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    let mut s = format!("# undirected\n{} {}\n", g.n(), g.edges().len());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("writing to a String cannot fail");
    }
    s
}

const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

/// Graphviz source. With `classes`, arc `a` is drawn in color `classes[a]`.
pub fn to_dot(d: &Digraph, classes: Option<&[usize]>) -> String {
    let mut s = String::from("digraph G {\n");
    for v in 0..d.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(w) = d.weights() {
            attrs.push(format!("label=\"{}\"", w[a]));
        }
        if let Some(c) = classes {
            attrs.push(format!("color=\"{}\"", PALETTE[c[a] % PALETTE.len()]));
        }
        if attrs.is_empty() {
            writeln!(s, "  {u} -> {v};").unwrap();
        } else {
            writeln!(s, "  {u} -> {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let d = parse_digraph("# triangle\n\n3 3  # header\n0 1\n1 2\n2 0 # closing\n").unwrap();
        assert_eq!(d.arcs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_digraph("2 2\n0 1\n1 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, message: "self-loop at vertex 1".into() });
        let e = parse_digraph("3 2\n0 1\n\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
        let e = parse_digraph("3 1\n0 7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_digraph("3 2\n0 1 2.0\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(parse_digraph("3 2\n0 1\n").is_err());
        assert!(parse_digraph("2 1\n0 1 -1\n").is_err());
    }

    #[test]
    fn weighted_round_trip() {
        let d = Digraph::with_weights(3, vec![(0, 1), (1, 2)], vec![0.25, 3.0]).unwrap();
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn dot_mentions_every_arc() {
        let d = Digraph::new(2, vec![(0, 1)]).unwrap();
        let dot = to_dot(&d, Some(&[1]));
        assert!(dot.contains("0 -> 1 [color="));
    }
}

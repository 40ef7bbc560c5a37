//! Edge-list and DIMACS readers and writers.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl Format {
    /// DIMACS if the first non-comment line is a `p` header.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c ") && *l != "c");
        match first {
            Some(l) if l.starts_with("p ") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "edge-list" | "edges" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            _ => Err(Error::Parse { line: 0, message: format!("unknown format `{s}`") }),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Checks one edge against the ones already seen, with a line-numbered error.
fn push_edge(
    edges: &mut Vec<(usize, usize)>,
    seen: &mut std::collections::HashSet<(usize, usize)>,
    line: usize,
    u: usize,
    v: usize,
    show: impl Fn(usize) -> String,
) -> Result<()> {
    if u == v {
        return Err(err(line, format!("self-loop at {}", show(u))));
    }
    if !seen.insert((u.min(v), u.max(v))) {
        return Err(err(line, format!("duplicate edge {} {}", show(u), show(v))));
    }
    edges.push((u, v));
    Ok(())
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut intern = |tok: &str, labels: &mut Vec<String>| -> usize {
        *ids.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", tok] => {
                intern(tok, &mut labels);
            }
            [a, b] => {
                let u = intern(a, &mut labels);
                let v = intern(b, &mut labels);
                let names = labels.clone();
                push_edge(&mut edges, &mut seen, line, u, v, |x| names[x].clone())?;
            }
            _ => return Err(err(line, format!("expected two tokens, got `{body}`"))),
        }
    }
    Graph::from_edges(labels.len(), &edges)?.with_labels(labels)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", "edge", n, m] | ["p", "col", n, m] => {
                if header.is_some() {
                    return Err(err(line, "second problem line"));
                }
                let n = n.parse().map_err(|_| err(line, format!("bad vertex count `{n}`")))?;
                let m = m.parse().map_err(|_| err(line, format!("bad edge count `{m}`")))?;
                header = Some((n, m));
            }
            ["e", a, b] => {
                let (n, _) = header.ok_or_else(|| err(line, "edge before problem line"))?;
                let id = |t: &str| -> Result<usize> {
                    let x: usize = t.parse().map_err(|_| err(line, format!("bad vertex `{t}`")))?;
                    if x == 0 || x > n {
                        return Err(err(line, format!("vertex {x} out of range 1..={n}")));
                    }
                    Ok(x - 1)
                };
                let (u, v) = (id(a)?, id(b)?);
                push_edge(&mut edges, &mut seen, line, u, v, |x| (x + 1).to_string())?;
            }
            _ => return Err(err(line, format!("malformed line `{}`", raw.trim()))),
        }
    }
    let (n, m) = header.ok_or_else(|| err(0, "missing `p edge n m` line"))?;
    if edges.len() != m {
        return Err(err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let labels = (1..=n).map(|v| v.to_string()).collect();
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// Edge-list text that parses back to the same graph with the same ids:
/// every vertex is declared first, in id order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        writeln!(out, "vertex {}", g.label(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use proptest::prelude::*;

    #[test]
    fn named_tokens() {
        let g = parse_graph("v1 v5\nv2 v5", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.label(1), "v5");
    }

    #[test]
    fn comments_and_isolated_vertices() {
        let g = parse_graph("# header\nvertex z\na b # trailing\n\n", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (3, 1));
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn dimacs_c4() {
        let text = "c four-cycle\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
        assert_eq!(Format::detect(text), Format::Dimacs);
        let g = parse_graph(text, Format::Dimacs).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let again = parse_graph(&to_dimacs(&g), Format::Dimacs).unwrap();
        assert_eq!(again.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("a b\nb a\n", Format::EdgeList, 2),
            ("a b\nc c\n", Format::EdgeList, 2),
            ("a b c\n", Format::EdgeList, 1),
            ("p edge 3 1\ne 1 4\n", Format::Dimacs, 2),
            ("p edge 3 2\ne 1 2\ne 2 1\n", Format::Dimacs, 3),
            ("p edge 3 1\nx\n", Format::Dimacs, 2),
        ];
        for (text, fmt, want) in cases {
            match parse_graph(text, fmt) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_graph("p edge 3 2\ne 1 2\n", Format::Dimacs).is_err());
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 0usize..12, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = generate(&Family::Gnp { n, p, seed }).unwrap();
            let back = parse_graph(&to_edge_list(&g), Format::EdgeList).unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        }
    }
}

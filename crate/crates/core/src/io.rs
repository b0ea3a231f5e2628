//! Text formats for graphs, configurations, and solutions.
//!
//! Graphs are edge lists: the first non-comment line is `n <count>`, every
//! later line is `u v` or `u v w`, and `#` starts a comment. Vertices are
//! written as integers `0..n` or as arbitrary labels; if any token is not an
//! integer below `n`, all tokens are treated as labels and numbered in
//! first-seen order.

use std::fmt::Write as _;

use crate::engine::{Configuration, Move, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, DEFAULT_WEIGHT};

/// A graph with the label of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = (0..graph.n()).map(|v| v.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    /// Resolves a vertex token: a label, or else a numeric id.
    pub fn vertex(&self, token: &str) -> Option<Vertex> {
        self.labels
            .iter()
            .position(|l| l == token)
            .or_else(|| token.parse().ok().filter(|&v: &Vertex| v < self.graph.n()))
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n <count>` header"))?;
    if header.len() != 2 || header[0] != "n" {
        return Err(Error::parse(hline, "expected `n <count>`"));
    }
    let n: usize = parse_num(hline, header[1], "a vertex count")?;
    let mut raw = Vec::new();
    for (line, toks) in lines {
        let w = match toks.len() {
            2 => None,
            3 => Some(parse_num::<u64>(line, toks[2], "an edge weight")?),
            _ => return Err(Error::parse(line, "expected `u v` or `u v w`")),
        };
        raw.push((line, toks[0].to_string(), toks[1].to_string(), w));
    }
    let numeric = raw.iter().all(|(_, u, v, _)| {
        [u, v]
            .iter()
            .all(|t| t.parse::<usize>().is_ok_and(|x| x < n))
    });
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    if numeric {
        labels = (0..n).map(|v| v.to_string()).collect();
        for (_, u, v, w) in &raw {
            edges.push((u.parse().expect("checked"), v.parse().expect("checked"), *w));
        }
    } else {
        let mut id = |line: usize, t: &str| -> Result<Vertex> {
            if let Some(i) = labels.iter().position(|l| l == t) {
                return Ok(i);
            }
            if labels.len() == n {
                return Err(Error::parse(line, format!("more than {n} distinct labels")));
            }
            labels.push(t.to_string());
            Ok(labels.len() - 1)
        };
        for (line, u, v, w) in &raw {
            let a = id(*line, u)?;
            let b = id(*line, v)?;
            edges.push((a, b, *w));
        }
        while labels.len() < n {
            labels.push(format!("#{}", labels.len()));
        }
    }
    let graph = Graph::new(n, edges)?;
    Ok(LabeledGraph { graph, labels })
}

/// Writes `g` as an edge list, omitting weights equal to the default.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        if e.weight == DEFAULT_WEIGHT {
            writeln!(out, "{} {}", e.u, e.v).expect("string write");
        } else {
            writeln!(out, "{} {} {}", e.u, e.v, e.weight).expect("string write");
        }
    }
    out
}

/// Reads a configuration: either a single line of `n` counts, or lines
/// `v count` (vertices not listed hold nothing). A single line with
/// exactly `n` tokens is always read as the first form.
pub fn parse_configuration(text: &str, g: &LabeledGraph) -> Result<Configuration> {
    let n = g.graph.n();
    let lines: Vec<_> = content_lines(text).collect();
    if let [(line, toks)] = lines.as_slice() {
        if toks.len() == n {
            let counts = toks
                .iter()
                .map(|t| parse_num(*line, t, "a pebble count"))
                .collect::<Result<Vec<u64>>>()?;
            return Ok(Configuration::new(counts));
        }
    }
    let mut c = Configuration::zeros(n);
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(Error::parse(line, "expected `v count`"));
        }
        let v = g
            .vertex(toks[0])
            .ok_or_else(|| Error::parse(line, format!("unknown vertex `{}`", toks[0])))?;
        c[v] += parse_num::<u64>(line, toks[1], "a pebble count")?;
    }
    Ok(c)
}

pub fn write_configuration(c: &Configuration) -> String {
    format!("{c}\n")
}

/// One `from -> to` line per move, in replay order.
pub fn write_solution(s: &Solution) -> String {
    s.moves.iter().map(|m| format!("{m}\n")).collect()
}

pub fn parse_moves(text: &str, g: &LabeledGraph) -> Result<Vec<Move>> {
    content_lines(text)
        .map(|(line, toks)| {
            if toks.len() != 3 || toks[1] != "->" {
                return Err(Error::parse(line, "expected `from -> to`"));
            }
            let end = |t: &str| {
                g.vertex(t)
                    .ok_or_else(|| Error::parse(line, format!("unknown vertex `{t}`")))
            };
            Ok(Move::new(end(toks[0])?, end(toks[2])?))
        })
        .collect()
}

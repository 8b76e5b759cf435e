//! Text formats for graphs.
//!
//! Edge list: first meaningful line is `n`, then one `u v` line per edge with
//! 0-based ids. Lines starting with `#` are comments; blank lines are ignored.
//!
//! DIMACS `.col` subset: `c` comment lines, one `p edge n m` header, then
//! `e u v` lines with 1-based ids. The edge count `m` in the header is
//! informational only; duplicate `e` lines collapse.

use std::str::FromStr;

use thiserror::Error;

use super::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" => Ok(Format::EdgeList),
            "dimacs" | "col" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl Format {
    /// Guesses the format from the first meaningful line.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first.and_then(|l| l.split_whitespace().next()) {
            Some("p" | "c" | "e") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("missing header")]
    MissingHeader,
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, msg: msg.into() }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| malformed(line, format!("expected a non-negative integer, got `{tok}`")))
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match n {
            None => {
                if toks.len() != 1 {
                    return Err(malformed(line, "expected vertex count on the first line"));
                }
                n = Some(parse_num(toks[0], line)?);
            }
            Some(n) => {
                let [u, v] = toks[..] else {
                    return Err(malformed(line, "expected `u v`"));
                };
                let (u, v) = (parse_num(u, line)?, parse_num(v, line)?);
                push_edge(&mut edges, u, v, n, line)?;
            }
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(build(n, edges))
}

fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match (toks[0], n) {
            ("c", _) => {}
            ("p", None) => {
                let [_, kind, nv, m] = toks[..] else {
                    return Err(malformed(line, "expected `p edge n m`"));
                };
                if kind != "edge" && kind != "col" {
                    return Err(malformed(line, format!("unsupported problem type `{kind}`")));
                }
                parse_num(m, line)?;
                n = Some(parse_num(nv, line)?);
            }
            ("p", Some(_)) => return Err(malformed(line, "duplicate `p` header")),
            ("e", None) => return Err(malformed(line, "edge before `p` header")),
            ("e", Some(n)) => {
                let [_, u, v] = toks[..] else {
                    return Err(malformed(line, "expected `e u v`"));
                };
                let (u, v) = (parse_num(u, line)?, parse_num(v, line)?);
                if u == 0 || v == 0 {
                    return Err(ParseError::OutOfRange { line, vertex: 0, n });
                }
                push_edge(&mut edges, u - 1, v - 1, n, line).map_err(|e| match e {
                    ParseError::OutOfRange { line, vertex, n } => {
                        ParseError::OutOfRange { line, vertex: vertex + 1, n }
                    }
                    ParseError::SelfLoop { line, vertex } => {
                        ParseError::SelfLoop { line, vertex: vertex + 1 }
                    }
                    other => other,
                })?;
            }
            (tok, _) => return Err(malformed(line, format!("unknown line type `{tok}`"))),
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(build(n, edges))
}

fn push_edge(
    edges: &mut Vec<(Vertex, Vertex)>,
    u: usize,
    v: usize,
    n: usize,
    line: usize,
) -> Result<(), ParseError> {
    for x in [u, v] {
        if x >= n {
            return Err(ParseError::OutOfRange { line, vertex: x, n });
        }
    }
    if u == v {
        return Err(ParseError::SelfLoop { line, vertex: u });
    }
    edges.push((u, v));
    Ok(())
}

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    // Every edge was range- and loop-checked while parsing.
    Graph::from_edges(n, edges).unwrap_or_else(|e: GraphError| unreachable!("{e}"))
}

pub fn render_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            out.push_str(&format!("{}\n", g.n()));
            for (u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        Format::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
            for (u, v) in g.edges() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
    }
    out
}

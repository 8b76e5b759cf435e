//! Line-oriented text formats for partitions, quotients, colorings and
//! certificates. Every reader skips blank lines and `#` comment lines, so
//! the comment lines the CLI prints can be piped back in.
//!
//! ```text
//! partition:    <i>: A=<v>,<v>,... B=<v>,...          one line per part
//! quotient:     <n>  /  <i> <j>  /  w <i> <j> : <u1> <u2> <v>
//! coloring:     palette <k>  /  <v> <color>
//! certificate:  T <s>: <v> <v> ... / <u>-<v> <u>-<v> ...
//!               conn <s> <s'> : <u> <v>
//!               parity <v> : <1|2>                   odd certificates only
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, TwoSides, Vertex, VertexSet};
use crate::minors::{ExpansionCertificate, OddExpansionCertificate, Tree};
use crate::partition::{BcpPartition, Part};
use crate::quotient::{QuotientGraph, WitnessTriple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn num(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.trim()
        .parse()
        .or_else(|_| err(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn join_ids(s: &VertexSet, sep: &str) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn render_partition(p: &BcpPartition) -> String {
    let mut out = String::new();
    for (i, part) in p.parts().iter().enumerate() {
        let s = &part.sides;
        writeln!(out, "{i}: A={} B={}", join_ids(&s.side_a, ","), join_ids(&s.side_b, ",")).unwrap();
    }
    out
}

pub fn parse_partition(text: &str) -> Result<BcpPartition, FormatError> {
    let mut parts = Vec::new();
    for (line, l) in content_lines(text) {
        let Some((idx, rest)) = l.split_once(':') else {
            return err(line, "expected `i: A=... B=...`");
        };
        if num(idx, line)? != parts.len() {
            return err(line, format!("expected part index {}", parts.len()));
        }
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let (Some(a), Some(b)) = (
            toks.first().and_then(|t| t.strip_prefix("A=")),
            toks.get(1).and_then(|t| t.strip_prefix("B=")),
        ) else {
            return err(line, "expected `A=<ids> B=<ids>`");
        };
        if toks.len() != 2 {
            return err(line, "trailing tokens after B=");
        }
        let ids = |s: &str| -> Result<Vec<Vertex>, FormatError> {
            s.split(',').filter(|t| !t.is_empty()).map(|t| num(t, line)).collect()
        };
        let (a, b) = (ids(a)?, ids(b)?);
        // A vertex on both sides is left for verify_partition to report;
        // a repeat within one side would vanish in the set, so reject it.
        for side in [&a, &b] {
            let distinct: std::collections::BTreeSet<_> = side.iter().collect();
            if distinct.len() != side.len() {
                return err(line, "vertex repeated within one side");
            }
        }
        parts.push(Part::new(TwoSides::new(a.into_iter().collect(), b.into_iter().collect())));
    }
    Ok(BcpPartition::from_parts(parts))
}

pub fn render_quotient(q: &QuotientGraph) -> String {
    let mut out = crate::graph::io::render_graph(q.h(), crate::graph::io::Format::EdgeList);
    for (&(i, j), w) in q.witnesses() {
        writeln!(out, "w {i} {j} : {} {} {}", w.u1, w.u2, w.v).unwrap();
    }
    out
}

/// Reads the quotient graph and its witnesses. The partition is not part of
/// the format.
pub fn parse_quotient(
    text: &str,
) -> Result<(Graph, BTreeMap<(usize, usize), WitnessTriple>), FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut witnesses = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match (n, &toks[..]) {
            (None, [count]) => n = Some(num(count, line)?),
            (None, _) => return err(line, "expected vertex count"),
            (Some(_), ["w", i, j, ":", u1, u2, v]) => {
                let (i, j) = (num(i, line)?, num(j, line)?);
                if i >= j {
                    return err(line, "witness key must satisfy i < j");
                }
                let w = WitnessTriple { u1: num(u1, line)?, u2: num(u2, line)?, v: num(v, line)? };
                if witnesses.insert((i, j), w).is_some() {
                    return err(line, format!("duplicate witness for {i} {j}"));
                }
            }
            (Some(_), [u, v]) => edges.push((num(u, line)?, num(v, line)?)),
            (Some(_), _) => return err(line, "expected `i j` or `w i j : u1 u2 v`"),
        }
    }
    let Some(n) = n else { return err(0, "missing vertex count") };
    let h = Graph::from_edges(n, edges).or_else(|e| err(0, e.to_string()))?;
    Ok((h, witnesses))
}

pub fn render_coloring(c: &Coloring) -> String {
    let mut out = format!("palette {}\n", c.palette());
    for (v, col) in c.colors().iter().enumerate() {
        if let Some(col) = col {
            writeln!(out, "{v} {col}").unwrap();
        }
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    let mut palette = None;
    let mut colors: Vec<Option<usize>> = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match (palette, &toks[..]) {
            (None, ["palette", k]) => palette = Some((num(k, line)?, line)),
            (None, _) => return err(line, "expected `palette <k>` header"),
            (Some(_), [v, c]) => {
                let (v, c) = (num(v, line)?, num(c, line)?);
                if colors.len() <= v {
                    colors.resize(v + 1, None);
                }
                if colors[v].replace(c).is_some() {
                    return err(line, format!("vertex {v} colored twice"));
                }
            }
            (Some(_), _) => return err(line, "expected `<v> <color>`"),
        }
    }
    let Some((k, header)) = palette else { return err(0, "missing `palette` header") };
    let c = Coloring::from_partial(colors);
    if c.palette() != k {
        return err(header, format!("header says palette {k}, coloring uses {}", c.palette()));
    }
    Ok(c)
}

pub fn render_certificate(cert: &ExpansionCertificate) -> String {
    let mut out = String::new();
    for (s, tree) in cert.trees.iter().enumerate() {
        let edges: Vec<String> = tree.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let line = format!("T {s}: {} / {}", join_ids(&tree.vertices, " "), edges.join(" "));
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    for (&(s, s2), &(u, v)) in &cert.connectors {
        writeln!(out, "conn {s} {s2} : {u} {v}").unwrap();
    }
    out
}

pub fn render_odd_certificate(cert: &OddExpansionCertificate) -> String {
    let mut out = render_certificate(&cert.base);
    for (&v, &c) in &cert.parity {
        writeln!(out, "parity {v} : {c}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCertificate {
    Plain(ExpansionCertificate),
    Odd(OddExpansionCertificate),
}

/// Parses a certificate; it is odd iff it has at least one `parity` line.
pub fn parse_certificate(text: &str) -> Result<AnyCertificate, FormatError> {
    let mut trees = Vec::new();
    let mut connectors = BTreeMap::new();
    let mut parity = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let Some((head, body)) = l.split_once(':') else {
            return err(line, "expected `<kind> ... : ...`");
        };
        let head: Vec<&str> = head.split_whitespace().collect();
        match head[..] {
            ["T", s] => {
                if num(s, line)? != trees.len() {
                    return err(line, format!("expected tree {}", trees.len()));
                }
                let (vs, es) = body.split_once('/').unwrap_or((body, ""));
                let vertices = vs
                    .split_whitespace()
                    .map(|t| num(t, line))
                    .collect::<Result<VertexSet, _>>()?;
                let edges = es
                    .split_whitespace()
                    .map(|e| match e.split_once('-') {
                        Some((u, v)) => Ok((num(u, line)?, num(v, line)?)),
                        None => err(line, format!("expected edge `u-v`, got `{e}`")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                trees.push(Tree { vertices, edges });
            }
            ["conn", s, s2] => {
                let key = (num(s, line)?, num(s2, line)?);
                let [u, v] = body.split_whitespace().collect::<Vec<_>>()[..] else {
                    return err(line, "expected `conn s s' : u v`");
                };
                if connectors.insert(key, (num(u, line)?, num(v, line)?)).is_some() {
                    return err(line, format!("duplicate connector for {} {}", key.0, key.1));
                }
            }
            ["parity", v] => {
                let v = num(v, line)?;
                let c = num(body, line)?;
                let c = u8::try_from(c).or_else(|_| err(line, format!("color {c} out of range")))?;
                if parity.insert(v, c).is_some() {
                    return err(line, format!("vertex {v} colored twice"));
                }
            }
            _ => return err(line, "expected a `T`, `conn` or `parity` line"),
        }
    }
    let base = ExpansionCertificate { trees, connectors };
    Ok(if parity.is_empty() {
        AnyCertificate::Plain(base)
    } else {
        AnyCertificate::Odd(OddExpansionCertificate { base, parity })
    })
}

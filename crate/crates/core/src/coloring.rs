//! Vertex colorings: an exact branch-and-bound colorer, a saturation-degree
//! heuristic, the composed coloring of `G` from a coloring of the quotient,
//! and a properness verifier.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Graph, Side, Vertex};
use crate::quotient::QuotientGraph;
use crate::report::VerificationReport;

/// Color assignment, 0-based color ids. Entries may be missing only for
/// colorings read from external input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<usize>>,
}

impl Coloring {
    pub fn from_colors(colors: Vec<usize>) -> Self {
        Coloring { colors: colors.into_iter().map(Some).collect() }
    }

    pub fn from_partial(colors: Vec<Option<usize>>) -> Self {
        Coloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: Vertex) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.colors
    }

    /// Number of distinct colors in use.
    pub fn palette(&self) -> usize {
        let mut used: Vec<usize> = self.colors.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Renumbers the used colors densely as `0..palette`, preserving their
    /// relative order.
    pub fn compacted(&self) -> Coloring {
        let mut used: Vec<usize> = self.colors.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let rank: BTreeMap<usize, usize> = used.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        Coloring { colors: self.colors.iter().map(|c| c.map(|c| rank[&c])).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("exact coloring budget exceeded after {nodes} search nodes; use the heuristic colorer instead")]
    BudgetExceeded { nodes: u64 },
    #[error("quotient coloring is not proper:\n{0}")]
    Improper(VerificationReport),
}

/// Limits for [`color_exact`]. The time limit is off by default because it
/// makes results depend on machine speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget { max_nodes: 20_000_000, max_time: None }
    }
}

/// DSATUR order: highest saturation, then higher degree, then lower id.
fn pick_dsatur(g: &Graph, colors: &[Option<usize>], saturation: &[usize]) -> Option<Vertex> {
    g.vertices()
        .filter(|&v| colors[v].is_none())
        .max_by(|&a, &b| {
            (saturation[a], g.degree(a))
                .cmp(&(saturation[b], g.degree(b)))
                .then(b.cmp(&a))
        })
}

/// Saturation-degree greedy coloring; each vertex takes the smallest color
/// not used by its neighbors.
pub fn color_heuristic(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![vec![false; n]; n];
    let mut saturation = vec![0; n];
    while let Some(v) = pick_dsatur(g, &colors, &saturation) {
        let c = (0..n).find(|&c| !seen[v][c]).expect("at most n-1 neighbor colors");
        colors[v] = Some(c);
        for &w in g.neighbors(v) {
            if !seen[w][c] {
                seen[w][c] = true;
                saturation[w] += 1;
            }
        }
    }
    Coloring { colors }
}

/// Greedy clique, the best over all start vertices.
fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut best = Vec::new();
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut cands: Vec<Vertex> = g.neighbors(start).to_vec();
        while !cands.is_empty() {
            let &next = cands
                .iter()
                .max_by_key(|&&c| (cands.iter().filter(|&&d| g.has_edge(c, d)).count(), std::cmp::Reverse(c)))
                .unwrap();
            clique.push(next);
            cands.retain(|&c| c != next && g.has_edge(c, next));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Search<'a> {
    g: &'a Graph,
    colors: Vec<Option<usize>>,
    /// `conflicts[v][c]`: number of neighbors of `v` holding color `c`.
    conflicts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    best_colors: Vec<Option<usize>>,
    lower: usize,
    nodes: u64,
    budget: ExactBudget,
    started: Instant,
}

impl Search<'_> {
    fn assign(&mut self, v: Vertex, c: usize) {
        self.colors[v] = Some(c);
        for &w in self.g.neighbors(v) {
            if self.conflicts[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.conflicts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        self.colors[v] = None;
        for &w in self.g.neighbors(v) {
            self.conflicts[w][c] -= 1;
            if self.conflicts[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, used: usize) -> Result<(), ColoringError> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(ColoringError::BudgetExceeded { nodes: self.nodes - 1 });
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.max_time {
                if self.started.elapsed() > limit {
                    return Err(ColoringError::BudgetExceeded { nodes: self.nodes });
                }
            }
        }
        let Some(v) = pick_dsatur(self.g, &self.colors, &self.saturation) else {
            self.best = used;
            self.best_colors = self.colors.clone();
            return Ok(());
        };
        for c in 0..=used {
            if self.best <= self.lower {
                break;
            }
            let next_used = used.max(c + 1);
            if next_used >= self.best || self.conflicts[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.run(next_used);
            self.unassign(v, c);
            r?;
        }
        Ok(())
    }
}

/// Proper coloring with the minimum number of colors.
///
/// Branch and bound in DSATUR order. The incumbent starts from
/// [`color_heuristic`], a greedy clique gives the lower bound and is
/// precolored with distinct colors to break color symmetry. Exceeding
/// `budget` is an error, never a silently suboptimal answer.
pub fn color_exact(g: &Graph, budget: ExactBudget) -> Result<Coloring, ColoringError> {
    let n = g.n();
    let upper = color_heuristic(g);
    let clique = greedy_clique(g);
    if upper.palette() == clique.len() {
        return Ok(upper);
    }
    let mut s = Search {
        g,
        colors: vec![None; n],
        conflicts: vec![vec![0; n + 1]; n],
        saturation: vec![0; n],
        best: upper.palette(),
        best_colors: upper.colors.clone(),
        lower: clique.len(),
        nodes: 0,
        budget,
        started: Instant::now(),
    };
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.run(clique.len())?;
    Ok(Coloring { colors: s.best_colors })
}

/// PASS iff every vertex of `g` is colored and every edge is bichromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> VerificationReport {
    const COVER: &str = "coverage";
    const PROPER: &str = "proper";
    let mut r = VerificationReport::new();
    r.check(COVER);
    r.check(PROPER);
    for v in g.vertices() {
        if c.color(v).is_none() {
            r.fail(COVER, format!("vertex {v} uncolored"));
        }
    }
    for v in g.n()..c.len() {
        if c.color(v).is_some() {
            r.fail(COVER, format!("vertex {v} colored but graph has {} vertices", g.n()));
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (c.color(u), c.color(v)) {
            if a == b {
                r.fail(PROPER, format!("edge {u}-{v} monochromatic (color {a})"));
            }
        }
    }
    r
}

/// Coloring of `G` from a proper coloring `c_h` of the quotient: vertex `x`
/// in part `i` on side `s` gets `2 * c_h(i) + s` (A = 0, B = 1), then colors
/// are compacted.
pub fn compose_coloring(q: &QuotientGraph, c_h: &Coloring) -> Result<Coloring, ColoringError> {
    let report = verify_coloring(q.h(), c_h);
    if !report.passed() {
        return Err(ColoringError::Improper(report));
    }
    let parts = q.partition().parts();
    let n = parts.iter().map(|p| p.len()).sum();
    let mut colors = vec![None; n];
    for (i, part) in parts.iter().enumerate() {
        let base = 2 * c_h.color(i).expect("checked coverage");
        for (side, set) in [(Side::A, &part.sides.side_a), (Side::B, &part.sides.side_b)] {
            for x in set.iter() {
                colors[x] = Some(base + side.index());
            }
        }
    }
    Ok(Coloring { colors }.compacted())
}

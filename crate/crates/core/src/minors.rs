//! Certificates for `K_t`-expansions and odd `K_t`-expansions, their
//! verifiers, and exhaustive search oracles for small graphs.
//!
//! A `K_t`-expansion is `t` vertex-disjoint trees plus one edge between each
//! pair of trees. It is odd when its vertices carry colors in `{1, 2}` such
//! that tree edges are bichromatic and connecting edges monochromatic.
//!
//! The searches enumerate maps `V -> {unused, 1..t}` in lexicographic order
//! (unused first), keeping only maps whose labels first appear in increasing
//! order. Every branch-set family is reached exactly once that way. They are
//! oracles: exponential, budget-capped, and never truncated silently.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{bfs_spanning_tree, is_connected, Graph, Vertex, VertexSet};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    pub vertices: VertexSet,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Trees `T_0..T_{t-1}` and, for every pair `s < s'`, one connecting edge
/// stored as `(endpoint in T_s, endpoint in T_s')`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpansionCertificate {
    pub trees: Vec<Tree>,
    pub connectors: BTreeMap<(usize, usize), (Vertex, Vertex)>,
}

impl ExpansionCertificate {
    pub fn t(&self) -> usize {
        self.trees.len()
    }

    pub fn connector(&self, s: usize, s2: usize) -> Option<(Vertex, Vertex)> {
        if s < s2 {
            self.connectors.get(&(s, s2)).copied()
        } else {
            self.connectors.get(&(s2, s)).map(|&(a, b)| (b, a))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OddExpansionCertificate {
    pub base: ExpansionCertificate,
    /// Color in `{1, 2}` for every tree vertex.
    pub parity: BTreeMap<Vertex, u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("search space (t+1)^n = {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("t must be positive")]
    ZeroOrder,
    #[error("brute-force search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
}

/// Hard cap on `(t+1)^n` for the brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_assignments: u128,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_assignments: 100_000_000 }
    }
}

const TREES: &str = "trees";
const DISJOINT: &str = "disjointness";
const CONNECTORS: &str = "connectors";
const PARITY_COVER: &str = "parity coverage";
const TREE_PARITY: &str = "tree edges bichromatic";
const CONN_PARITY: &str = "connectors monochromatic";

/// First violated clause of tree `s`, if any.
fn tree_fault(g: &Graph, s: usize, tree: &Tree) -> Option<String> {
    if tree.vertices.is_empty() {
        return Some(format!("tree {s}: empty"));
    }
    if let Some(v) = tree.vertices.iter().find(|&v| v >= g.n()) {
        return Some(format!("tree {s}: vertex {v} not in G"));
    }
    let mut seen = Vec::new();
    for &(u, v) in &tree.edges {
        if !tree.vertices.contains(u) || !tree.vertices.contains(v) {
            return Some(format!("tree {s}: edge {u}-{v} leaves the tree's vertex set"));
        }
        if !g.has_edge(u, v) {
            return Some(format!("tree {s}: edge {u}-{v} is not an edge of G"));
        }
        let key = (u.min(v), u.max(v));
        if seen.contains(&key) {
            return Some(format!("tree {s}: edge {u}-{v} listed twice"));
        }
        seen.push(key);
    }
    if tree.edges.len() + 1 != tree.vertices.len() {
        return Some(format!(
            "tree {s}: {} edges for {} vertices",
            tree.edges.len(),
            tree.vertices.len()
        ));
    }
    let as_graph = Graph::from_edges(g.n(), tree.edges.iter().copied()).expect("edges of G");
    if !is_connected(&as_graph, &tree.vertices) {
        return Some(format!("tree {s}: not connected"));
    }
    None
}

pub fn verify_expansion(g: &Graph, cert: &ExpansionCertificate) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.check(TREES);
    r.check(DISJOINT);
    r.check(CONNECTORS);
    let t = cert.t();

    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (s, tree) in cert.trees.iter().enumerate() {
        if let Some(msg) = tree_fault(g, s, tree) {
            r.fail(TREES, msg);
        }
        if let Some(v) = tree.vertices.iter().find(|v| owner.contains_key(v)) {
            r.fail(DISJOINT, format!("tree {s}: vertex {v} already in tree {}", owner[&v]));
        }
        for v in tree.vertices.iter() {
            owner.entry(v).or_insert(s);
        }
    }

    for s in 0..t {
        for s2 in s + 1..t {
            let Some((x, y)) = cert.connectors.get(&(s, s2)).copied() else {
                r.fail(CONNECTORS, format!("pair {s},{s2}: no connector"));
                continue;
            };
            let (ts, ts2) = (&cert.trees[s].vertices, &cert.trees[s2].vertices);
            let spans = (ts.contains(x) && ts2.contains(y)) || (ts.contains(y) && ts2.contains(x));
            if !spans {
                r.fail(CONNECTORS, format!("pair {s},{s2}: connector {x}-{y} does not join T_{s} and T_{s2}"));
            } else if !g.has_edge(x, y) {
                r.fail(CONNECTORS, format!("pair {s},{s2}: connector {x}-{y} is not an edge of G"));
            }
        }
    }
    for &(s, s2) in cert.connectors.keys() {
        if s >= s2 || s2 >= t {
            r.fail(CONNECTORS, format!("connector keyed by invalid pair {s},{s2}"));
        }
    }
    r
}

pub fn verify_odd_expansion(g: &Graph, cert: &OddExpansionCertificate) -> VerificationReport {
    let mut r = verify_expansion(g, &cert.base);
    r.check(PARITY_COVER);
    r.check(TREE_PARITY);
    r.check(CONN_PARITY);
    let tree_vertices: VertexSet = cert.base.trees.iter().flat_map(|t| t.vertices.iter()).collect();

    for v in tree_vertices.iter() {
        match cert.parity.get(&v) {
            None => r.fail(PARITY_COVER, format!("vertex {v} has no color")),
            Some(1 | 2) => {}
            Some(c) => r.fail(PARITY_COVER, format!("vertex {v} has color {c}, expected 1 or 2")),
        }
    }
    for &v in cert.parity.keys() {
        if !tree_vertices.contains(v) {
            r.fail(PARITY_COVER, format!("vertex {v} is colored but lies in no tree"));
        }
    }
    let color = |v: Vertex| cert.parity.get(&v).copied();

    for (s, tree) in cert.base.trees.iter().enumerate() {
        for &(u, v) in &tree.edges {
            if color(u).is_some() && color(u) == color(v) {
                r.fail(TREE_PARITY, format!("tree {s}: edge {u}-{v} monochromatic"));
            }
        }
    }
    for (&(s, s2), &(x, y)) in &cert.base.connectors {
        if color(x).is_some() && color(x) != color(y) {
            r.fail(
                CONN_PARITY,
                format!("pair {s},{s2}: connector {x}-{y} has colors ({}, {})", color(x).unwrap(), color(y).map_or(0, |c| c)),
            );
        }
    }
    r
}

fn bits(mask: u64) -> impl Iterator<Item = Vertex> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn set_of(mask: u64) -> VertexSet {
    bits(mask).collect()
}

/// Branch-set enumeration shared by both searches.
struct Enumerator<'a, F> {
    n: usize,
    t: usize,
    adj: &'a [u64],
    classes: Vec<u64>,
    on_leaf: F,
}

impl<F, R> Enumerator<'_, F>
where
    F: FnMut(&[u64]) -> Option<R>,
{
    fn run(&mut self, v: usize, labels_used: usize) -> Option<R> {
        if self.t - labels_used > self.n - v {
            return None;
        }
        if v == self.n {
            return if self.valid_branch_sets() { (self.on_leaf)(&self.classes) } else { None };
        }
        // Label 0 is "unused"; class k holds label k + 1.
        if let Some(r) = self.run(v + 1, labels_used) {
            return Some(r);
        }
        for k in 0..(labels_used + 1).min(self.t) {
            self.classes[k] |= 1 << v;
            let found = self.run(v + 1, labels_used.max(k + 1));
            self.classes[k] &= !(1 << v);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn valid_branch_sets(&self) -> bool {
        let reach: Vec<u64> = self.classes.iter().map(|&c| neighborhood(self.adj, c)).collect();
        self.classes.iter().all(|&c| mask_connected(self.adj, c, |_, _| true))
            && (0..self.t).all(|s| (s + 1..self.t).all(|s2| reach[s] & self.classes[s2] != 0))
    }
}

fn neighborhood(adj: &[u64], mask: u64) -> u64 {
    bits(mask).fold(0, |acc, v| acc | adj[v])
}

/// Whether `mask` is connected using only edges accepted by `keep`.
fn mask_connected(adj: &[u64], mask: u64, keep: impl Fn(Vertex, Vertex) -> bool) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    let mut stack = vec![reached.trailing_zeros() as usize];
    while let Some(u) = stack.pop() {
        for w in bits(adj[u] & mask & !reached) {
            if keep(u, w) {
                reached |= 1 << w;
                stack.push(w);
            }
        }
    }
    reached == mask
}

fn prepare(g: &Graph, t: usize, budget: SearchBudget) -> Result<Vec<u64>, MinorError> {
    if t == 0 {
        return Err(MinorError::ZeroOrder);
    }
    let required = (t as u128 + 1).checked_pow(g.n() as u32).unwrap_or(u128::MAX);
    if required > budget.max_assignments {
        return Err(MinorError::BudgetExceeded { required, budget: budget.max_assignments });
    }
    if g.n() > 64 {
        return Err(MinorError::TooLarge(g.n()));
    }
    Ok(g.vertices().map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect())
}

/// Lexicographically least edge `(min, max)` of `g` with one end in `a` and
/// the other in `b`, accepted by `keep`, oriented as `(end in a, end in b)`.
fn least_cross_edge(
    g: &Graph,
    a: u64,
    b: u64,
    keep: impl Fn(Vertex, Vertex) -> bool,
) -> Option<(Vertex, Vertex)> {
    let inside = |m: u64, v: Vertex| m >> v & 1 == 1;
    g.edges().find_map(|(u, v)| {
        if inside(a, u) && inside(b, v) && keep(u, v) {
            Some((u, v))
        } else if inside(b, u) && inside(a, v) && keep(v, u) {
            Some((v, u))
        } else {
            None
        }
    })
}

fn connectors_for(
    g: &Graph,
    classes: &[u64],
    keep: impl Fn(Vertex, Vertex) -> bool,
) -> BTreeMap<(usize, usize), (Vertex, Vertex)> {
    let t = classes.len();
    let mut out = BTreeMap::new();
    for s in 0..t {
        for s2 in s + 1..t {
            let e = least_cross_edge(g, classes[s], classes[s2], &keep).expect("pair checked adjacent");
            out.insert((s, s2), e);
        }
    }
    out
}

/// Exhaustive search for a `K_t`-expansion. Trees are lowest-id-rooted
/// breadth-first trees of the branch sets; connectors are the
/// lexicographically least edges between them.
pub fn find_expansion(
    g: &Graph,
    t: usize,
    budget: SearchBudget,
) -> Result<Option<ExpansionCertificate>, MinorError> {
    let adj = prepare(g, t, budget)?;
    let mut e = Enumerator {
        n: g.n(),
        t,
        adj: &adj,
        classes: vec![0; t],
        on_leaf: |classes: &[u64]| {
            let trees = classes
                .iter()
                .map(|&c| {
                    let vertices = set_of(c);
                    let edges = bfs_spanning_tree(g, &vertices).expect("class is connected");
                    Tree { vertices, edges }
                })
                .collect();
            Some(ExpansionCertificate { trees, connectors: connectors_for(g, classes, |_, _| true) })
        },
    };
    Ok(e.run(0, 0))
}

/// Exhaustive search for an odd `K_t`-expansion.
///
/// For fixed branch sets, a 2-coloring of a branch set comes from some
/// spanning tree exactly when its bichromatic edges connect the set. All
/// such colorings are tried per set (for a bipartite set that is just the
/// canonical coloring and its flip), looking for a combination where every
/// pair of sets is joined by a monochromatic edge.
pub fn find_odd_expansion(
    g: &Graph,
    t: usize,
    budget: SearchBudget,
) -> Result<Option<OddExpansionCertificate>, MinorError> {
    let adj = prepare(g, t, budget)?;
    let mut e = Enumerator {
        n: g.n(),
        t,
        adj: &adj,
        classes: vec![0; t],
        on_leaf: |classes: &[u64]| odd_certificate_for(g, &adj, classes),
    };
    Ok(e.run(0, 0))
}

/// Colorings of `mask` (as the set of vertices colored 2) whose bichromatic
/// edges connect `mask`, in increasing submask order.
fn admissible_colorings(adj: &[u64], mask: u64, fix_lowest: bool) -> Vec<u64> {
    let lowest = mask & mask.wrapping_neg();
    let mut out = Vec::new();
    let mut sub = 0u64;
    loop {
        if !(fix_lowest && sub & lowest != 0)
            && mask_connected(adj, mask, |u, w| (sub >> u & 1) != (sub >> w & 1))
        {
            out.push(sub);
        }
        if sub == mask {
            break;
        }
        sub = sub.wrapping_sub(mask) & mask;
    }
    out
}

fn odd_certificate_for(g: &Graph, adj: &[u64], classes: &[u64]) -> Option<OddExpansionCertificate> {
    let t = classes.len();
    // A global flip preserves every clause, so class 0 keeps its lowest
    // vertex at color 1.
    let options: Vec<Vec<u64>> = classes
        .iter()
        .enumerate()
        .map(|(s, &c)| admissible_colorings(adj, c, s == 0))
        .collect();
    let mut chosen = vec![0u64; t];
    if !choose_parities(adj, classes, &options, &mut chosen, 0) {
        return None;
    }
    let twos: u64 = chosen.iter().fold(0, |a, &b| a | b);
    let color = |v: Vertex| if twos >> v & 1 == 1 { 2u8 } else { 1u8 };

    let trees = classes
        .iter()
        .map(|&c| {
            let vertices = set_of(c);
            let edges = bichromatic_bfs_tree(g, c, color);
            Tree { vertices, edges }
        })
        .collect();
    let connectors = connectors_for(g, classes, |x, y| color(x) == color(y));
    let parity = classes.iter().flat_map(|&c| bits(c)).map(|v| (v, color(v))).collect();
    Some(OddExpansionCertificate { base: ExpansionCertificate { trees, connectors }, parity })
}

fn choose_parities(adj: &[u64], classes: &[u64], options: &[Vec<u64>], chosen: &mut [u64], s: usize) -> bool {
    if s == classes.len() {
        return true;
    }
    for &sub in &options[s] {
        let ones = classes[s] & !sub;
        let ok = (0..s).all(|p| {
            let p_twos = chosen[p];
            let p_ones = classes[p] & !p_twos;
            neighborhood(adj, p_twos) & sub != 0 || neighborhood(adj, p_ones) & ones != 0
        });
        if ok {
            chosen[s] = sub;
            if choose_parities(adj, classes, options, chosen, s + 1) {
                return true;
            }
        }
    }
    false
}

/// Lowest-id-rooted BFS tree of `mask` using only bichromatic edges.
fn bichromatic_bfs_tree(g: &Graph, mask: u64, color: impl Fn(Vertex) -> u8) -> Vec<(Vertex, Vertex)> {
    let root = mask.trailing_zeros() as usize;
    let mut reached = 1u64 << root;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if mask >> w & 1 == 1 && reached >> w & 1 == 0 && color(u) != color(w) {
                reached |= 1 << w;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    debug_assert_eq!(reached, mask);
    edges
}

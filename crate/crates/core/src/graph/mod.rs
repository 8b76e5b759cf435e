//! Simple undirected graphs on dense vertex ids `0..n`, plus the structural
//! queries the rest of the crate is built on: connectivity inside a vertex
//! subset and two-sided bipartitions with odd-cycle witnesses.
//!
//! Adjacency lists are kept sorted, so every traversal visits neighbors in
//! ascending id order. All downstream greedy choices rely on that.

pub mod generate;
pub mod io;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Always dense and 0-based.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("induced subgraph is disconnected ({components} components)")]
    Disconnected { components: usize },
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// The full vertex set `{0..n}`.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted_unchecked(self.vertices().collect())
    }

    /// Membership mask for `s`. Panics if `s` has a vertex out of range.
    pub(crate) fn mask_of(&self, s: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for v in s.iter() {
            mask[v] = true;
        }
        mask
    }

    fn check_in_range(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.max() {
            Some(v) if v >= self.n() => Err(GraphError::OutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Sorted set of distinct vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.iter().any(|v| other.contains(v))
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Which side of a two-sided bipartition a vertex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    /// 0 for `A`, 1 for `B`.
    pub fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

/// Bipartition `{A; B}` of a vertex subset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TwoSides {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl TwoSides {
    pub fn new(side_a: VertexSet, side_b: VertexSet) -> Self {
        TwoSides { side_a, side_b }
    }

    pub fn members(&self) -> VertexSet {
        self.side_a.union(&self.side_b)
    }

    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        if self.side_a.contains(v) {
            Some(Side::A)
        } else if self.side_b.contains(v) {
            Some(Side::B)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Odd closed walk `w_0 w_1 .. w_{k-1} w_0` inside the queried set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleWitness {
    pub walk: Vec<Vertex>,
}

impl OddCycleWitness {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Edges of the closed walk, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Sides(TwoSides),
    OddCycle(OddCycleWitness),
}

impl Bipartition {
    pub fn sides(self) -> Option<TwoSides> {
        match self {
            Bipartition::Sides(s) => Some(s),
            Bipartition::OddCycle(_) => None,
        }
    }
}

/// Unique bipartition of the connected induced subgraph `g[s]`, with the
/// lowest id of `s` on side A, or an odd cycle inside `s` if there is none.
pub fn bipartition_of(g: &Graph, s: &VertexSet) -> Result<Bipartition, GraphError> {
    g.check_in_range(s)?;
    let root = s.min().ok_or(GraphError::EmptySet)?;
    let inside = g.mask_of(s);

    let mut depth: Vec<Option<usize>> = vec![None; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::from([root]);
    depth[root] = Some(0);
    let mut reached = 1;
    let mut conflict = None;

    while let Some(u) = queue.pop_front() {
        let du = depth[u].unwrap();
        for &w in g.neighbors(u) {
            if !inside[w] {
                continue;
            }
            match depth[w] {
                None => {
                    depth[w] = Some(du + 1);
                    parent[w] = u;
                    reached += 1;
                    queue.push_back(w);
                }
                Some(dw) if dw % 2 == du % 2 && conflict.is_none() => conflict = Some((u, w)),
                Some(_) => {}
            }
        }
    }

    if reached < s.len() {
        return Err(GraphError::Disconnected { components: connected_components(g, s).len() });
    }

    if let Some((x, y)) = conflict {
        // Climb both BFS branches to their common ancestor.
        let (mut a, mut b) = (x, y);
        let mut up = vec![a];
        let mut down = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            up.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            down.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            up.push(a);
            down.push(b);
        }
        // up = x .. lca, down = y .. lca; closing edge is y-x.
        down.pop();
        let mut walk = up;
        walk.extend(down.into_iter().rev());
        debug_assert!(walk.len() % 2 == 1);
        return Ok(Bipartition::OddCycle(OddCycleWitness { walk }));
    }

    let (side_a, side_b): (Vec<Vertex>, Vec<Vertex>) =
        s.iter().partition(|&v| depth[v].unwrap().is_multiple_of(2));
    Ok(Bipartition::Sides(TwoSides::new(
        VertexSet::from_sorted_unchecked(side_a),
        VertexSet::from_sorted_unchecked(side_b),
    )))
}

/// Connected components of `g[s]`, ordered by minimum vertex id.
///
/// Panics if `s` contains a vertex outside `g`.
pub fn connected_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let inside = g.mask_of(s);
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for root in s.iter() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

/// Whether `g[s]` is connected. The empty set counts as disconnected.
pub fn is_connected(g: &Graph, s: &VertexSet) -> bool {
    !s.is_empty() && connected_components(g, s).len() == 1
}

/// Breadth-first spanning tree of `g[s]` rooted at the lowest id of `s`,
/// scanning neighbors in ascending order. Edges are returned as
/// `(parent, child)` in discovery order. Returns `None` when `g[s]` is
/// disconnected or `s` is empty.
pub fn bfs_spanning_tree(g: &Graph, s: &VertexSet) -> Option<Vec<(Vertex, Vertex)>> {
    let root = s.min()?;
    let inside = g.mask_of(s);
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(s.len().saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    (edges.len() + 1 == s.len()).then_some(edges)
}

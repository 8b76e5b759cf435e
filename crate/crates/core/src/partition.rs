//! Partition of `V(G)` into parts that each induce a connected bipartite
//! subgraph, extracted greedily as inclusion-wise maximal sets.
//!
//! Each part is grown from the lowest unused vertex. Growth proceeds in
//! rounds: a round snapshots the current frontier (unused vertices adjacent
//! to the part, minus those already rejected) in ascending id order and
//! tests each candidate against the part as it stands at that moment. A
//! candidate whose neighbors inside the part all lie on one side is absorbed
//! on the opposite side; otherwise it is rejected for good, since a vertex
//! that sees both sides keeps seeing both sides as the part grows. Rounds
//! repeat until one absorbs nothing.
//!
//! When growth stops, every unused vertex adjacent to the part sees both
//! of its sides. That makes the part maximal among all supersets: a larger
//! connected bipartite superset would contain such a neighbor, whose two
//! neighbors on opposite sides close an odd cycle.

use std::collections::BTreeSet;

use crate::graph::{bipartition_of, Bipartition, Graph, Side, TwoSides, Vertex, VertexSet};
use crate::report::VerificationReport;

/// One part `X_i` together with its bipartition `{A_i; B_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Part {
    pub sides: TwoSides,
}

impl Part {
    pub fn new(sides: TwoSides) -> Self {
        Part { sides }
    }

    pub fn members(&self) -> VertexSet {
        self.sides.members()
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        self.sides.side_of(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BcpPartition {
    parts: Vec<Part>,
}

impl BcpPartition {
    /// Wraps parts without checking them. Use [`verify_partition`] on
    /// anything that did not come from [`compute_partition`].
    pub fn from_parts(parts: Vec<Part>) -> Self {
        BcpPartition { parts }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `part_of[v]` is the index of the first part listing `v`, if any.
    pub fn part_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.members().iter() {
                if v < n && out[v].is_none() {
                    out[v] = Some(i);
                }
            }
        }
        out
    }
}

pub fn compute_partition(g: &Graph) -> BcpPartition {
    let n = g.n();
    let mut used = vec![false; n];
    let mut parts = Vec::new();

    for seed in 0..n {
        if used[seed] {
            continue;
        }
        let mut side: Vec<Option<Side>> = vec![None; n];
        let mut rejected = vec![false; n];
        side[seed] = Some(Side::A);
        used[seed] = true;
        let mut members = vec![seed];

        loop {
            let frontier: BTreeSet<Vertex> = members
                .iter()
                .flat_map(|&u| g.neighbors(u).iter().copied())
                .filter(|&w| !used[w] && !rejected[w])
                .collect();
            let mut absorbed = false;
            for x in frontier {
                let mut seen = [false; 2];
                for &w in g.neighbors(x) {
                    if let Some(s) = side[w] {
                        seen[s.index()] = true;
                    }
                }
                match seen {
                    [true, false] => side[x] = Some(Side::B),
                    [false, true] => side[x] = Some(Side::A),
                    _ => {
                        rejected[x] = true;
                        continue;
                    }
                }
                used[x] = true;
                members.push(x);
                absorbed = true;
            }
            if !absorbed {
                break;
            }
        }

        let (a, b): (Vec<Vertex>, Vec<Vertex>) =
            members.iter().partition(|&&v| side[v] == Some(Side::A));
        parts.push(Part::new(TwoSides::new(a.into_iter().collect(), b.into_iter().collect())));
    }
    BcpPartition { parts }
}

/// Checks both partition properties independently of how `p` was built:
/// coverage and disjointness, per-part connectivity and bipartiteness of the
/// stored sides, and a witness triple for every pair of parts joined by an
/// edge.
pub fn verify_partition(g: &Graph, p: &BcpPartition) -> VerificationReport {
    const COVER: &str = "coverage/disjointness";
    const PART: &str = "parts connected and bipartite";
    const CANON: &str = "canonical sides";
    const WITNESS: &str = "witness triples";

    let mut r = VerificationReport::new();
    r.check(COVER);
    r.check(PART);
    r.check(CANON);
    r.check(WITNESS);
    let n = g.n();

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, part) in p.parts().iter().enumerate() {
        if part.is_empty() {
            r.fail(COVER, format!("part {i} is empty"));
        }
        for v in part.sides.side_a.iter() {
            if part.sides.side_b.contains(v) {
                r.fail(COVER, format!("vertex {v} on both sides of part {i}"));
            }
        }
        for v in part.members().iter() {
            if v >= n {
                r.fail(COVER, format!("part {i} lists vertex {v}, graph has {n} vertices"));
                continue;
            }
            match owner[v] {
                Some(j) => r.fail(COVER, format!("vertex {v} in parts {j} and {i}")),
                None => owner[v] = Some(i),
            }
        }
    }
    for v in 0..n {
        if owner[v].is_none() {
            r.fail(COVER, format!("vertex {v} not covered"));
        }
    }
    if !r.passed() {
        return r;
    }

    for (i, part) in p.parts().iter().enumerate() {
        let members = part.members();
        match bipartition_of(g, &members) {
            Err(e) => r.fail(PART, format!("part {i}: {e}")),
            Ok(Bipartition::OddCycle(w)) => {
                r.fail(PART, format!("part {i}: odd cycle {:?}", w.walk))
            }
            Ok(Bipartition::Sides(_)) => {}
        }
        for (u, v) in g.edges() {
            if let (Some(su), Some(sv)) = (part.side_of(u), part.side_of(v)) {
                if su == sv {
                    r.fail(PART, format!("part {i}: edge {u}-{v} inside side {su:?}"));
                }
            }
        }
        if members.min().is_some() && members.min() != part.sides.side_a.min() {
            r.fail(CANON, format!("part {i}: lowest id {:?} not on side A", members.min()));
        }
    }

    let count = p.len();
    let mut joined = vec![vec![false; count]; count];
    for (u, v) in g.edges() {
        let (pu, pv) = (owner[u].unwrap(), owner[v].unwrap());
        if pu != pv {
            joined[pu.min(pv)][pu.max(pv)] = true;
        }
    }
    for i in 0..count {
        for j in i + 1..count {
            if joined[i][j] && find_witness(g, &p.parts()[i], &p.parts()[j]).is_none() {
                r.fail(
                    WITNESS,
                    format!("parts {i},{j} are joined but no v in part {j} sees both sides of part {i}"),
                );
            }
        }
    }
    r
}

/// Lexicographically least `(v, u1, u2)` with `v` in `hi`, `u1` on side A
/// and `u2` on side B of `lo`, and both `u1 v`, `u2 v` edges of `g`.
pub(crate) fn find_witness(g: &Graph, lo: &Part, hi: &Part) -> Option<(Vertex, Vertex, Vertex)> {
    hi.members().iter().find_map(|v| {
        let nbrs = g.neighbors(v);
        let u1 = nbrs.iter().copied().find(|&u| lo.sides.side_a.contains(u))?;
        let u2 = nbrs.iter().copied().find(|&u| lo.sides.side_b.contains(u))?;
        Some((u1, u2, v))
    })
}

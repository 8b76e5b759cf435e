//! The quotient graph `H` obtained by contracting every part of a
//! [`BcpPartition`], with one witness triple stored per edge of `H`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::partition::{find_witness, verify_partition, BcpPartition};
use crate::report::VerificationReport;

/// Vertices `u1`, `u2` on sides A and B of the lower-indexed part, and `v`
/// in the higher-indexed part, with `u1 v` and `u2 v` both edges of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WitnessTriple {
    pub u1: Vertex,
    pub u2: Vertex,
    pub v: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("partition fails verification ({}):\n{report}", .report.failed_checks().join(", "))]
    InvalidPartition { report: VerificationReport },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    h: Graph,
    witnesses: BTreeMap<(usize, usize), WitnessTriple>,
    partition: BcpPartition,
}

impl QuotientGraph {
    /// Assembles a quotient without any consistency checks.
    pub fn from_raw(
        h: Graph,
        witnesses: BTreeMap<(usize, usize), WitnessTriple>,
        partition: BcpPartition,
    ) -> Self {
        QuotientGraph { h, witnesses, partition }
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn partition(&self) -> &BcpPartition {
        &self.partition
    }

    /// Witnesses keyed by `(i, j)` with `i < j`.
    pub fn witnesses(&self) -> &BTreeMap<(usize, usize), WitnessTriple> {
        &self.witnesses
    }

    /// Witness for the `H`-edge `{i, j}` in either orientation.
    pub fn witness(&self, i: usize, j: usize) -> Option<&WitnessTriple> {
        self.witnesses.get(&(i.min(j), i.max(j)))
    }
}

pub fn build_quotient(g: &Graph, p: &BcpPartition) -> Result<QuotientGraph, QuotientError> {
    let report = verify_partition(g, p);
    if !report.passed() {
        return Err(QuotientError::InvalidPartition { report });
    }
    let h = contract(g, p);
    let parts = p.parts();
    let witnesses = h
        .edges()
        .map(|(i, j)| {
            let (u1, u2, v) = find_witness(g, &parts[i], &parts[j])
                .expect("verified partition has a witness for every joined pair");
            ((i, j), WitnessTriple { u1, u2, v })
        })
        .collect();
    Ok(QuotientGraph { h, witnesses, partition: p.clone() })
}

/// Identify each part to one vertex, dropping loops and parallel edges.
fn contract(g: &Graph, p: &BcpPartition) -> Graph {
    let owner = p.part_of(g.n());
    let edges = g.edges().filter_map(|(u, v)| {
        let (pu, pv) = (owner[u]?, owner[v]?);
        (pu != pv).then_some((pu, pv))
    });
    Graph::from_edges(p.len(), edges).expect("part indices are in range")
}

/// PASS iff `q.h` is exactly the contraction of `G` along `q`'s partition.
pub fn contraction_check(g: &Graph, q: &QuotientGraph) -> VerificationReport {
    const CHECK: &str = "h is the contraction of G";
    let mut r = VerificationReport::new();
    r.check(CHECK);
    let owner = q.partition.part_of(g.n());
    if let Some(v) = owner.iter().position(Option::is_none) {
        r.fail(CHECK, format!("vertex {v} lies in no part"));
        return r;
    }
    let expected = contract(g, &q.partition);
    if expected.n() != q.h.n() {
        r.fail(CHECK, format!("h has {} vertices, partition has {} parts", q.h.n(), expected.n()));
        return r;
    }
    for (i, j) in expected.edges() {
        if !q.h.has_edge(i, j) {
            r.fail(CHECK, format!("missing edge {i}-{j}"));
        }
    }
    for (i, j) in q.h.edges() {
        if !expected.has_edge(i, j) {
            r.fail(CHECK, format!("spurious edge {i}-{j}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, GraphSpec};
    use crate::partition::compute_partition;

    fn quotient_of(spec: GraphSpec) -> (Graph, QuotientGraph) {
        let g = generate(spec, 0).unwrap();
        let q = build_quotient(&g, &compute_partition(&g)).unwrap();
        (g, q)
    }

    #[test]
    fn c5_quotient_is_k2() {
        let (g, q) = quotient_of(GraphSpec::Cycle(5));
        assert_eq!(q.h(), &Graph::from_edges(2, [(0, 1)]).unwrap());
        assert_eq!(q.witness(0, 1), Some(&WitnessTriple { u1: 2, u2: 4, v: 3 }));
        assert!(contraction_check(&g, &q).passed());
    }

    #[test]
    fn k5_quotient_is_k3() {
        let (g, q) = quotient_of(GraphSpec::Complete(5));
        assert_eq!(q.h(), &generate(GraphSpec::Complete(3), 0).unwrap());
        assert_eq!(q.witness(0, 1), Some(&WitnessTriple { u1: 0, u2: 1, v: 2 }));
        assert_eq!(q.witness(0, 2), Some(&WitnessTriple { u1: 0, u2: 1, v: 4 }));
        assert_eq!(q.witness(2, 1), Some(&WitnessTriple { u1: 2, u2: 3, v: 4 }));
        assert!(contraction_check(&g, &q).passed());
    }

    #[test]
    fn edgeless_quotient() {
        let g = Graph::empty(3);
        let q = build_quotient(&g, &compute_partition(&g)).unwrap();
        assert_eq!(q.h(), &Graph::empty(3));
        assert!(q.witnesses().is_empty());
    }

    #[test]
    fn deleted_h_edge_fails_contraction_check() {
        let (g, q) = quotient_of(GraphSpec::Cycle(5));
        let broken = QuotientGraph::from_raw(Graph::empty(2), BTreeMap::new(), q.partition().clone());
        assert!(!contraction_check(&g, &broken).passed());
    }

    #[test]
    fn invalid_partition_rejected() {
        use crate::graph::TwoSides;
        use crate::partition::Part;
        let g = generate(GraphSpec::Cycle(4), 0).unwrap();
        let p = BcpPartition::from_parts(vec![
            Part::new(TwoSides::new([0].into(), [1].into())),
            Part::new(TwoSides::new([2].into(), [3].into())),
        ]);
        let err = build_quotient(&g, &p).unwrap_err();
        assert!(err.to_string().contains("witness triples"));
    }
}

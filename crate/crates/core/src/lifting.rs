//! Lifting a `K_t`-expansion of the quotient `H` to an odd `K_t`-expansion
//! of `G`, and the end-to-end reduction report built on it.
//!
//! Each `H`-tree `T_s` becomes a tree of `G` on the union of its parts: a
//! breadth-first spanning tree inside every part, joined along the edges of
//! `T_s` by the least `G`-edge between the two parts. Because the tree spans
//! each part, its 2-coloring splits every part along the part's own sides.
//! A witness `(u1, u2, v)` for an `H`-connector therefore has `u1` and `u2`
//! colored differently, and exactly one of them matches `v`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::coloring::{color_exact, compose_coloring, verify_coloring, Coloring, ColoringError, ExactBudget};
use crate::graph::{bfs_spanning_tree, Graph, Vertex, VertexSet};
use crate::minors::{
    find_expansion, verify_expansion, verify_odd_expansion, ExpansionCertificate, MinorError,
    OddExpansionCertificate, SearchBudget, Tree,
};
use crate::partition::{compute_partition, BcpPartition};
use crate::quotient::{build_quotient, QuotientGraph};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("certificate is not a valid expansion of the quotient:\n{0}")]
    InvalidCertificate(VerificationReport),
}

/// One lifted tree `T^G_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTree {
    /// Parts of `G` contracted into the `H`-tree, ascending.
    pub parts: Vec<usize>,
    pub vertices: VertexSet,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Proper 2-coloring of the tree in `{1, 2}`; the root gets 1.
    pub colors: BTreeMap<Vertex, u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTrees {
    pub trees: Vec<LiftedTree>,
}

/// Builds `T^G_s` for every tree of `cert_h` and 2-colors it.
pub fn lift_trees(
    g: &Graph,
    q: &QuotientGraph,
    cert_h: &ExpansionCertificate,
) -> Result<LiftedTrees, LiftError> {
    let report = verify_expansion(q.h(), cert_h);
    if !report.passed() {
        return Err(LiftError::InvalidCertificate(report));
    }
    let parts = q.partition().parts();
    let members: Vec<VertexSet> = parts.iter().map(|p| p.members()).collect();

    let trees = cert_h
        .trees
        .iter()
        .map(|h_tree| {
            let part_ids: Vec<usize> = h_tree.vertices.iter().collect();
            let mut edges = Vec::new();
            for &i in &part_ids {
                edges.extend(bfs_spanning_tree(g, &members[i]).expect("parts are connected"));
            }
            for &(i, j) in &h_tree.edges {
                edges.push(least_edge_between(g, &members[i], &members[j]));
            }
            let vertices: VertexSet = part_ids.iter().flat_map(|&i| members[i].iter()).collect();
            // Lowest id of the lowest-indexed part.
            let root = members[part_ids[0]].min().expect("parts are nonempty");
            let colors = two_color_tree(&edges, root);
            LiftedTree { parts: part_ids, vertices, edges, colors }
        })
        .collect();
    Ok(LiftedTrees { trees })
}

fn least_edge_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> (Vertex, Vertex) {
    a.iter()
        .chain(b.iter())
        .flat_map(|u| g.neighbors(u).iter().map(move |&w| (u.min(w), u.max(w))))
        .filter(|&(x, y)| (a.contains(x) && b.contains(y)) || (b.contains(x) && a.contains(y)))
        .min()
        .expect("an H-edge is backed by at least one G-edge")
}

fn two_color_tree(edges: &[(Vertex, Vertex)], root: Vertex) -> BTreeMap<Vertex, u8> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut colors = BTreeMap::from([(root, 1u8)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let cu = colors[&u];
        for &w in adj.get(&u).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = colors.entry(w) {
                e.insert(3 - cu);
                queue.push_back(w);
            }
        }
    }
    colors
}

/// Turns a `K_t`-expansion of `q.h()` into an odd `K_t`-expansion of `g`.
///
/// # Panics
///
/// If no monochromatic connector exists for some pair, or the finished
/// certificate fails [`verify_odd_expansion`]. Both mean `q` was not built
/// from `g` by [`build_quotient`].
pub fn lift_expansion(
    g: &Graph,
    q: &QuotientGraph,
    cert_h: &ExpansionCertificate,
) -> Result<OddExpansionCertificate, LiftError> {
    let lifted = lift_trees(g, q, cert_h)?;
    let parity: BTreeMap<Vertex, u8> =
        lifted.trees.iter().flat_map(|t| t.colors.iter().map(|(&v, &c)| (v, c))).collect();

    let mut connectors = BTreeMap::new();
    for (&(s, s2), &(a, b)) in &cert_h.connectors {
        // The witness sits on the lower-indexed of the two parts, which may
        // belong to either tree.
        let w = q.witness(a, b).expect("every H-edge carries a witness");
        let u = [w.u1, w.u2]
            .into_iter()
            .find(|u| parity[u] == parity[&w.v])
            .unwrap_or_else(|| {
                panic!("witness ({}, {}, {}) has no vertex matching v's color", w.u1, w.u2, w.v)
            });
        let lower_in_s = cert_h.trees[s].vertices.contains(a.min(b));
        let edge = if lower_in_s { (u, w.v) } else { (w.v, u) };
        connectors.insert((s, s2), edge);
    }

    let trees = lifted
        .trees
        .into_iter()
        .map(|t| Tree { vertices: t.vertices, edges: t.edges })
        .collect();
    let cert = OddExpansionCertificate { base: ExpansionCertificate { trees, connectors }, parity };
    let report = verify_odd_expansion(g, &cert);
    assert!(report.passed(), "lifted certificate failed verification:\n{report}");
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Budgets {
    pub search: SearchBudget,
    pub exact: ExactBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `H` has a `K_t`-expansion; its lift is an odd `K_t`-expansion of `G`.
    Lifted {
        cert_h: ExpansionCertificate,
        odd: OddExpansionCertificate,
        verification: VerificationReport,
    },
    /// `H` has no `K_t`-expansion; `G` gets a coloring with at most
    /// `2 * chi(H)` colors.
    MinorFree {
        chi_h: Coloring,
        composed: Coloring,
        verification: VerificationReport,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub t: usize,
    pub n: usize,
    pub partition: BcpPartition,
    pub quotient: QuotientGraph,
    pub outcome: Outcome,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Lifted { verification, .. } => verification.passed(),
            Outcome::MinorFree { chi_h, composed, verification } => {
                verification.passed() && composed.palette() <= 2 * chi_h.palette()
            }
        }
    }
}

/// Partition, contract, search `H` for `K_t`, then either lift the expansion
/// or color `G` through `H`.
pub fn reduction_report(g: &Graph, t: usize, budgets: Budgets) -> Result<ReductionReport, ReductionError> {
    let partition = compute_partition(g);
    let quotient = build_quotient(g, &partition).expect("computed partitions verify");
    let outcome = match find_expansion(quotient.h(), t, budgets.search)? {
        Some(cert_h) => {
            let odd = lift_expansion(g, &quotient, &cert_h).expect("search output verifies");
            let verification = verify_odd_expansion(g, &odd);
            Outcome::Lifted { cert_h, odd, verification }
        }
        None => {
            let chi_h = color_exact(quotient.h(), budgets.exact)?;
            let composed = compose_coloring(&quotient, &chi_h)?;
            let verification = verify_coloring(g, &composed);
            Outcome::MinorFree { chi_h, composed, verification }
        }
    };
    Ok(ReductionReport { t, n: g.n(), partition, quotient, outcome })
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.quotient.h();
        writeln!(f, "G: {} vertices", self.n)?;
        writeln!(f, "parts: {}", self.partition.len())?;
        writeln!(f, "H: {} vertices, {} edges", h.n(), h.m())?;
        let t = self.t;
        match &self.outcome {
            Outcome::Lifted { cert_h, odd, verification } => {
                writeln!(f, "H contains a K_{t}-expansion:")?;
                write!(f, "{}", crate::formats::render_certificate(cert_h))?;
                writeln!(f, "lifted odd K_{t}-expansion in G:")?;
                write!(f, "{}", crate::formats::render_odd_certificate(odd))?;
                writeln!(f, "verification:")?;
                writeln!(f, "{verification}")
            }
            Outcome::MinorFree { chi_h, composed, verification } => {
                writeln!(f, "H is K_{t}-expansion-free")?;
                writeln!(f, "chi(H) = {}", chi_h.palette())?;
                writeln!(
                    f,
                    "composed palette = {} <= 2*chi(H) = {}",
                    composed.palette(),
                    2 * chi_h.palette()
                )?;
                write!(f, "{}", crate::formats::render_coloring(composed))?;
                writeln!(f, "verification:")?;
                writeln!(f, "{verification}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, GraphSpec};

    fn named(spec: GraphSpec) -> Graph {
        generate(spec, 0).unwrap()
    }

    fn singletons(t: usize) -> ExpansionCertificate {
        ExpansionCertificate {
            trees: (0..t).map(|s| Tree { vertices: [s].into(), edges: vec![] }).collect(),
            connectors: (0..t).flat_map(|s| (s + 1..t).map(move |s2| ((s, s2), (s, s2)))).collect(),
        }
    }

    fn quotient(g: &Graph) -> QuotientGraph {
        build_quotient(g, &compute_partition(g)).unwrap()
    }

    #[test]
    fn k5_lifts_to_odd_k3() {
        let g = named(GraphSpec::Complete(5));
        let q = quotient(&g);
        let odd = lift_expansion(&g, &q, &singletons(3)).unwrap();
        let sets: Vec<VertexSet> = odd.base.trees.iter().map(|t| t.vertices.clone()).collect();
        assert_eq!(sets, vec![VertexSet::from([0, 1]), [2, 3].into(), [4].into()]);
        assert!(verify_odd_expansion(&g, &odd).passed());
    }

    #[test]
    fn c5_lifts_to_odd_k2() {
        let g = named(GraphSpec::Cycle(5));
        let q = quotient(&g);
        let odd = lift_expansion(&g, &q, &singletons(2)).unwrap();
        assert_eq!(odd.base.trees[0].vertices, [0, 1, 2, 4].into());
        assert_eq!(odd.base.trees[1].vertices, [3].into());
        let (x, y) = odd.base.connectors[&(0, 1)];
        assert_eq!(y, 3);
        assert!(x == 2 || x == 4);
        assert_eq!(odd.parity[&x], odd.parity[&3]);
        assert!(verify_odd_expansion(&g, &odd).passed());
    }

    #[test]
    fn invalid_h_certificate_is_contract_error() {
        let g = named(GraphSpec::Cycle(5));
        let q = quotient(&g);
        // H = K2 has no K3-expansion on singletons.
        assert!(matches!(lift_expansion(&g, &q, &singletons(3)), Err(LiftError::InvalidCertificate(_))));
    }

    #[test]
    fn lifted_colors_match_part_sides() {
        let g = named(GraphSpec::Petersen);
        let q = quotient(&g);
        let cert = find_expansion(q.h(), 2, SearchBudget::default()).unwrap().unwrap();
        let lifted = lift_trees(&g, &q, &cert).unwrap();
        for tree in &lifted.trees {
            for &i in &tree.parts {
                let sides = &q.partition().parts()[i].sides;
                let a: Vec<u8> = sides.side_a.iter().map(|v| tree.colors[&v]).collect();
                let b: Vec<u8> = sides.side_b.iter().map(|v| tree.colors[&v]).collect();
                assert!(a.windows(2).all(|w| w[0] == w[1]));
                assert!(b.iter().all(|&c| Some(&c) != a.first()));
            }
        }
    }

    #[test]
    fn reduction_k5_t3_lifts() {
        let g = named(GraphSpec::Complete(5));
        let r = reduction_report(&g, 3, Budgets::default()).unwrap();
        assert!(matches!(r.outcome, Outcome::Lifted { .. }));
        assert!(r.passed());
    }

    #[test]
    fn reduction_c4_t3_colors() {
        let g = named(GraphSpec::Cycle(4));
        let r = reduction_report(&g, 3, Budgets::default()).unwrap();
        assert_eq!(r.quotient.h(), &Graph::empty(1));
        let Outcome::MinorFree { composed, .. } = &r.outcome else { panic!("expected coloring") };
        assert!(composed.palette() <= 2);
        assert!(r.passed());
    }

    #[test]
    fn reduction_c5_t3_colors() {
        let g = named(GraphSpec::Cycle(5));
        let r = reduction_report(&g, 3, Budgets::default()).unwrap();
        let Outcome::MinorFree { chi_h, composed, .. } = &r.outcome else { panic!("expected coloring") };
        assert_eq!(chi_h.palette(), 2);
        assert!(composed.palette() <= 4);
        assert!(r.to_string().contains("H is K_3-expansion-free"));
    }
}

mod common;

use oddminor::coloring::{color_exact, compose_coloring, verify_coloring, ExactBudget};
use oddminor::graph::generate::{generate, GraphSpec};
use oddminor::graph::io::{parse_graph, render_graph, Format};
use oddminor::graph::{bipartition_of, connected_components, Bipartition};
use oddminor::lifting::{lift_expansion, lift_trees};
use oddminor::minors::{find_expansion, find_odd_expansion, verify_expansion, verify_odd_expansion, SearchBudget};
use oddminor::partition::{compute_partition, verify_partition};
use oddminor::quotient::{build_quotient, contraction_check};
use oddminor::{Graph, VertexSet};
use proptest::prelude::*;

use common::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_subset(g: &Graph) -> impl Strategy<Value = VertexSet> {
    let n = g.n();
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(g in arb_graph(100)) {
        for format in [Format::EdgeList, Format::Dimacs] {
            prop_assert_eq!(&parse_graph(&render_graph(&g, format), format).unwrap(), &g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bipartition_matches_brute_force((g, s) in arb_graph(10).prop_flat_map(|g| {
        let s = arb_subset(&g);
        (Just(g), s)
    })) {
        let mask = mask_of(s.iter());
        match bipartition_of(&g, &s) {
            Err(_) => prop_assert!(!connected_mask(&g, mask)),
            Ok(Bipartition::Sides(sides)) => {
                prop_assert!(connected_mask(&g, mask) && bipartite_mask(&g, mask));
                prop_assert_eq!(sides.members(), s.clone());
                prop_assert_eq!(sides.side_a.min(), s.min());
                for (u, v) in g.edges() {
                    if let (Some(a), Some(b)) = (sides.side_of(u), sides.side_of(v)) {
                        prop_assert_ne!(a, b);
                    }
                }
            }
            Ok(Bipartition::OddCycle(w)) => {
                prop_assert!(!bipartite_mask(&g, mask));
                prop_assert_eq!(w.len() % 2, 1);
                for (u, v) in w.edges() {
                    prop_assert!(s.contains(u) && s.contains(v) && g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn components_partition_the_subset((g, s) in arb_graph(12).prop_flat_map(|g| {
        let s = arb_subset(&g);
        (Just(g), s)
    })) {
        let comps = connected_components(&g, &s);
        let mut covered = VertexSet::new();
        for c in &comps {
            prop_assert!(connected_mask(&g, mask_of(c.iter())));
            prop_assert!(c.is_disjoint(&covered));
            covered = covered.union(c);
        }
        prop_assert_eq!(covered, s.clone());
        for (u, v) in g.edges() {
            if s.contains(u) && s.contains(v) {
                prop_assert!(comps.iter().any(|c| c.contains(u) && c.contains(v)));
            }
        }
        let mins: Vec<_> = comps.iter().map(|c| c.min()).collect();
        prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partition_is_valid_and_maximal(g in arb_graph(9)) {
        let p = compute_partition(&g);
        prop_assert!(verify_partition(&g, &p).passed());
        prop_assert_eq!(maximality_violation(&g, &p), None);
        prop_assert_eq!(compute_partition(&g), p);
    }

    #[test]
    fn quotient_invariants(g in arb_graph(20)) {
        let p = compute_partition(&g);
        let q = build_quotient(&g, &p).unwrap();
        prop_assert_eq!(q.h().n(), p.len());
        prop_assert!(contraction_check(&g, &q).passed());
        prop_assert!(witness_faults(&g, &q).is_empty());
        prop_assert_eq!(q.witnesses().len(), q.h().m());
    }

    #[test]
    fn composed_coloring_is_proper(g in arb_graph(16)) {
        let q = build_quotient(&g, &compute_partition(&g)).unwrap();
        let c_h = color_exact(q.h(), ExactBudget::default()).unwrap();
        let c = compose_coloring(&q, &c_h).unwrap();
        prop_assert!(verify_coloring(&g, &c).passed());
        prop_assert!(c.palette() <= 2 * c_h.palette());
    }

    #[test]
    fn exact_matches_brute_force(g in arb_graph(7)) {
        let c = color_exact(&g, ExactBudget::default()).unwrap();
        prop_assert!(verify_coloring(&g, &c).passed());
        prop_assert_eq!(c.palette(), brute_force_chromatic(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn searches_are_sound_and_monotone(g in arb_graph(7), t in 1usize..=4) {
        let budget = SearchBudget::default();
        let plain = find_expansion(&g, t, budget).unwrap();
        if let Some(cert) = &plain {
            prop_assert!(verify_expansion(&g, cert).passed());
            if t >= 2 {
                prop_assert!(find_expansion(&g, t - 1, budget).unwrap().is_some());
            }
        }
        let odd = find_odd_expansion(&g, t, budget).unwrap();
        if let Some(cert) = &odd {
            prop_assert!(verify_odd_expansion(&g, cert).passed());
            prop_assert!(plain.is_some());
        }
    }

    #[test]
    fn lift_is_sound_and_side_coherent(g in arb_graph(9), t in 2usize..=4) {
        let q = build_quotient(&g, &compute_partition(&g)).unwrap();
        if let Some(cert_h) = find_expansion(q.h(), t, SearchBudget::default()).unwrap() {
            let lifted = lift_trees(&g, &q, &cert_h).unwrap();
            let mut seen = VertexSet::new();
            for tree in &lifted.trees {
                prop_assert!(tree.vertices.is_disjoint(&seen));
                seen = seen.union(&tree.vertices);
                for &i in &tree.parts {
                    let sides = &q.partition().parts()[i].sides;
                    let ca: Vec<u8> = sides.side_a.iter().map(|v| tree.colors[&v]).collect();
                    let cb: Vec<u8> = sides.side_b.iter().map(|v| tree.colors[&v]).collect();
                    prop_assert!(ca.iter().all(|&c| c == ca[0]));
                    prop_assert!(cb.iter().all(|&c| c != ca[0]));
                }
            }
            let odd = lift_expansion(&g, &q, &cert_h).unwrap();
            prop_assert!(verify_odd_expansion(&g, &odd).passed());
        }
    }
}

#[test]
fn bipartite_graphs_give_one_part_per_component() {
    for e in corpus() {
        if !bipartite_mask(&e.g, full_mask(e.g.n())) {
            continue;
        }
        let p = compute_partition(&e.g);
        let comps = connected_components(&e.g, &e.g.vertex_set());
        assert_eq!(p.len(), comps.len(), "{}", e.name);
        let q = build_quotient(&e.g, &p).unwrap();
        assert_eq!(q.h().m(), 0, "{}", e.name);
    }
}

#[test]
fn named_partition_examples_are_maximal() {
    for spec in [GraphSpec::Cycle(5), GraphSpec::Complete(5), GraphSpec::Petersen] {
        let g = generate(spec, 0).unwrap();
        assert_eq!(maximality_violation(&g, &compute_partition(&g)), None, "{spec}");
    }
}

#[test]
fn c4_split_has_no_witness_by_enumeration() {
    // parts {0,1} (A={0}, B={1}) and {2,3}: no v in {2,3} adjacent to both 0 and 1.
    let g = generate(GraphSpec::Cycle(4), 0).unwrap();
    let triples = (2..4).filter(|&v| g.has_edge(0, v) && g.has_edge(1, v)).count();
    assert_eq!(triples, 0);
}

#[test]
fn petersen_is_three_chromatic_by_brute_force() {
    let g = generate(GraphSpec::Petersen, 0).unwrap();
    assert_eq!(brute_force_chromatic(&g), 3);
}

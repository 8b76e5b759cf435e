//! Test corpus and brute-force oracles. Nothing here calls into the
//! algorithms it is used to check, only into `Graph` accessors and the
//! generators.
#![allow(dead_code)]

use oddminor::graph::generate::{generate, GraphSpec};
use oddminor::partition::BcpPartition;
use oddminor::quotient::QuotientGraph;
use oddminor::Graph;

pub const CORPUS_SIZE: usize = 500;
pub const PROBS: [f64; 4] = [0.1, 0.3, 0.5, 0.8];

pub struct Entry {
    pub name: String,
    pub g: Graph,
}

/// 500 seeded G(n, p) graphs with n cycling through 1..=40 and p through
/// `PROBS`, followed by the named families.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for k in 0..CORPUS_SIZE {
        let n = 1 + k % 40;
        let p = PROBS[(k / 40) % PROBS.len()];
        let seed = 1000 + k as u64;
        let spec = GraphSpec::Gnp { n, p };
        out.push(Entry { name: format!("{spec} seed {seed}"), g: generate(spec, seed).unwrap() });
    }
    out.extend(named());
    out
}

pub fn named() -> Vec<Entry> {
    let mut specs = Vec::new();
    specs.extend((1..=6).map(GraphSpec::Complete));
    specs.extend((3..=12).map(GraphSpec::Cycle));
    specs.push(GraphSpec::Petersen);
    for a in 1..=4 {
        for b in a..=4 {
            specs.push(GraphSpec::CompleteBipartite(a, b));
        }
    }
    specs
        .into_iter()
        .map(|s| Entry { name: s.to_string(), g: generate(s, 0).unwrap() })
        .collect()
}

pub fn small(max_n: usize) -> Vec<Entry> {
    corpus().into_iter().filter(|e| e.g.n() <= max_n).collect()
}

pub fn has(mask: u64, v: usize) -> bool {
    mask >> v & 1 == 1
}

/// Connectivity of `g[mask]` by plain DFS.
pub fn connected_mask(g: &Graph, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if has(mask, w) && !has(seen, w) {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == mask
}

/// Bipartiteness of `g[mask]` by exhaustive 2-coloring when small, DFS
/// parity propagation otherwise.
pub fn bipartite_mask(g: &Graph, mask: u64) -> bool {
    let verts: Vec<usize> = (0..g.n()).filter(|&v| has(mask, v)).collect();
    if verts.len() <= 10 {
        return (0u32..1 << verts.len()).any(|bits| {
            let color = |v: usize| bits >> verts.iter().position(|&x| x == v).unwrap() & 1;
            g.edges()
                .filter(|&(u, v)| has(mask, u) && has(mask, v))
                .all(|(u, v)| color(u) != color(v))
        });
    }
    let mut color = vec![None; g.n()];
    for &s in &verts {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0u8);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !has(mask, w) {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(1 - color[u].unwrap());
                        stack.push(w);
                    }
                    Some(c) if Some(c) == color[u] => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> u64 {
    vs.into_iter().fold(0, |m, v| m | 1 << v)
}

/// For each part, every strict superset drawn from the vertices not used by
/// earlier parts; returns the first superset that still induces a connected
/// bipartite graph, i.e. a maximality violation.
pub fn maximality_violation(g: &Graph, p: &BcpPartition) -> Option<(usize, u64)> {
    let mut used = 0u64;
    for (i, part) in p.parts().iter().enumerate() {
        let own = mask_of(part.members().iter());
        let free = full_mask(g.n()) & !used & !own;
        // Enumerate nonempty submasks of `free`.
        let mut extra = free;
        while extra != 0 {
            let s = own | extra;
            if connected_mask(g, s) && bipartite_mask(g, s) {
                return Some((i, s));
            }
            extra = (extra - 1) & free;
        }
        used |= own;
    }
    None
}

/// Chromatic number by trying every assignment with k = 0, 1, 2, ... colors.
pub fn brute_force_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
            // Odometer increment.
            let mut i = 0;
            while i < n && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("n colors always suffice")
}

/// Re-checks every stored witness triple against `g` directly.
pub fn witness_faults(g: &Graph, q: &QuotientGraph) -> Vec<String> {
    let parts = q.partition().parts();
    let mut faults = Vec::new();
    for (&(i, j), w) in q.witnesses() {
        let (lo, hi) = (&parts[i].sides, &parts[j].sides);
        if i >= j {
            faults.push(format!("key {i},{j} not ordered"));
        }
        if !lo.side_a.contains(w.u1) {
            faults.push(format!("{i},{j}: u1={} not on side A of part {i}", w.u1));
        }
        if !lo.side_b.contains(w.u2) {
            faults.push(format!("{i},{j}: u2={} not on side B of part {i}", w.u2));
        }
        if !(hi.side_a.contains(w.v) || hi.side_b.contains(w.v)) {
            faults.push(format!("{i},{j}: v={} not in part {j}", w.v));
        }
        if !g.has_edge(w.u1, w.v) || !g.has_edge(w.u2, w.v) {
            faults.push(format!("{i},{j}: ({}, {}, {}) edges missing", w.u1, w.u2, w.v));
        }
    }
    faults
}

/// Parts as vertex masks, checked to cover `0..n` disjointly.
pub fn owner_of(g: &Graph, p: &BcpPartition) -> Vec<usize> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in p.parts().iter().enumerate() {
        for v in part.members().iter() {
            assert_eq!(owner[v], usize::MAX, "vertex {v} in two parts");
            owner[v] = i;
        }
    }
    owner
}

//! Deterministic graph generators.
//!
//! `gnp` draws from ChaCha8 seeded with `seed_from_u64(seed)`. Pairs `(u, v)`
//! with `u < v` are visited in lexicographic order; each consumes one `u64`
//! `x`, and the edge is kept iff `(x >> 11) * 2^-53 < p`.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator parameters: {0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphSpec {
    Complete(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Gnp { n: usize, p: f64 },
    Petersen,
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete(t) => write!(f, "complete {t}"),
            GraphSpec::Cycle(n) => write!(f, "cycle {n}"),
            GraphSpec::CompleteBipartite(a, b) => write!(f, "complete-bipartite {a} {b}"),
            GraphSpec::Gnp { n, p } => write!(f, "gnp {n} {p}"),
            GraphSpec::Petersen => write!(f, "petersen"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = ConfigError;

    /// Parses the whitespace-separated form used by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        GraphSpec::from_tokens(&toks)
    }
}

impl GraphSpec {
    pub fn from_tokens<S: AsRef<str>>(toks: &[S]) -> Result<Self, ConfigError> {
        let toks: Vec<&str> = toks.iter().map(AsRef::as_ref).collect();
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| ConfigError(format!("expected a non-negative integer, got `{s}`")))
        };
        let spec = match toks[..] {
            ["complete", t] => GraphSpec::Complete(int(t)?),
            ["cycle", n] => GraphSpec::Cycle(int(n)?),
            ["complete-bipartite", a, b] => GraphSpec::CompleteBipartite(int(a)?, int(b)?),
            ["gnp", n, p] => GraphSpec::Gnp {
                n: int(n)?,
                p: p.parse().map_err(|_| ConfigError(format!("expected a probability, got `{p}`")))?,
            },
            ["petersen"] => GraphSpec::Petersen,
            _ => {
                return Err(ConfigError(format!(
                    "unknown generator `{}`; expected complete T | cycle N | \
                     complete-bipartite A B | gnp N P | petersen",
                    toks.join(" ")
                )))
            }
        };
        Ok(spec)
    }
}

/// Generates the graph described by `spec`. Only `gnp` uses `seed`.
pub fn generate(spec: GraphSpec, seed: u64) -> Result<Graph, ConfigError> {
    let g = match spec {
        GraphSpec::Complete(t) => {
            positive("complete", t)?;
            Graph::from_edges(t, (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))))
        }
        GraphSpec::Cycle(n) => {
            if n < 3 {
                return Err(ConfigError(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphSpec::CompleteBipartite(a, b) => {
            positive("complete-bipartite", a)?;
            positive("complete-bipartite", b)?;
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        GraphSpec::Gnp { n, p } => {
            positive("gnp", n)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(ConfigError(format!("p must lie in [0, 1], got {p}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let x = rng.next_u64();
                    if ((x >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        GraphSpec::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::from_edges(10, outer.chain(spokes).chain(inner))
        }
    };
    Ok(g.expect("generators only emit valid edges"))
}

fn positive(name: &str, x: usize) -> Result<(), ConfigError> {
    if x == 0 {
        Err(ConfigError(format!("{name}: parameters must be positive")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_four() {
        let g = generate(GraphSpec::Complete(4), 0).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
    }

    #[test]
    fn cycle_five() {
        let g = generate(GraphSpec::Cycle(5), 0).unwrap();
        assert_eq!(g, Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap());
    }

    #[test]
    fn gnp_extremes() {
        for seed in [0, 1, 42, u64::MAX] {
            let g = generate(GraphSpec::Gnp { n: 10, p: 0.0 }, seed).unwrap();
            assert_eq!((g.n(), g.m()), (10, 0));
            let k = generate(GraphSpec::Gnp { n: 10, p: 1.0 }, seed).unwrap();
            assert_eq!(k.m(), 45);
        }
    }

    #[test]
    fn gnp_is_seeded() {
        let spec = GraphSpec::Gnp { n: 30, p: 0.3 };
        assert_eq!(generate(spec, 7).unwrap(), generate(spec, 7).unwrap());
        assert_ne!(generate(spec, 7).unwrap(), generate(spec, 8).unwrap());
    }

    #[test]
    fn petersen_is_cubic() {
        let g = generate(GraphSpec::Petersen, 0).unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn complete_bipartite() {
        let g = generate(GraphSpec::CompleteBipartite(2, 3), 0).unwrap();
        assert_eq!((g.n(), g.m()), (5, 6));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(GraphSpec::Complete(0), 0).is_err());
        assert!(generate(GraphSpec::Cycle(2), 0).is_err());
        assert!(generate(GraphSpec::Gnp { n: 5, p: 1.5 }, 0).is_err());
        assert!(generate(GraphSpec::Gnp { n: 5, p: f64::NAN }, 0).is_err());
        assert!("gnp 5".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn spec_display_round_trip() {
        for s in ["complete 4", "cycle 5", "complete-bipartite 2 3", "gnp 8 0.5", "petersen"] {
            assert_eq!(s.parse::<GraphSpec>().unwrap().to_string(), s);
        }
    }
}

//! Bipartite-connected partitions and the reduction from odd-minor coloring
//! to minor coloring.
//!
//! The pipeline: [`partition::compute_partition`] splits `G` into parts that
//! each induce a connected bipartite subgraph, [`quotient::build_quotient`]
//! contracts them into `H` with one witness triple per edge,
//! [`coloring::compose_coloring`] turns a coloring of `H` into one of `G`
//! with at most twice as many colors, and [`lifting::lift_expansion`] turns a
//! `K_t`-expansion of `H` into an odd `K_t`-expansion of `G`. The brute-force
//! searches in [`minors`] check all of it on small graphs.

pub mod cli;
pub mod coloring;
pub mod formats;
pub mod graph;
pub mod lifting;
pub mod minors;
pub mod partition;
pub mod quotient;
pub mod report;

pub use graph::{Graph, Vertex, VertexSet};
pub use report::VerificationReport;

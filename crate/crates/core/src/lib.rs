//! Strong graph coloring.
//!
//! Given a graph `G` with maximum degree `Δ` and any partition of its vertex
//! set (padded with isolated vertices) into blocks of size `k ≥ 2Δ`, with at
//! most three blocks, [`engine::strong_coloring`] finds a proper coloring in
//! which every block sees each of the `k` colors exactly once. The crate also
//! carries an exact exponential-time oracle for tiny graphs, the `K_{Δ,Δ}`
//! lower-bound instances, and a reduction that extracts triangle factors from
//! dense tripartite graphs.

pub mod constructions;
pub mod engine;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod triangle;

pub use engine::{strong_coloring, Solution, SolveReport};
pub use error::{FactorError, GraphError, OracleError, ParseError, PartitionError, SolveError};
pub use graph::{
    verify_strong_coloring, BlockPartition, Color, Graph, StrongColoring, Verdict, Vertex,
    Violation,
};

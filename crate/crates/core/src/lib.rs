//! Exact fixed-parameter algorithms for Connected Vertex Cover.
//!
//! The crate solves the decision, real-weighted and counting versions of the
//! problem in time exponential only in the budget `k`. The pipeline is:
//!
//! * [`approx`] finds a connected vertex cover of size at most twice the
//!   optimum (internal nodes of a DFS tree);
//! * [`solver`] runs iterative compression over a vertex ordering whose
//!   suffixes are connected, un-contracting one vertex per round;
//! * [`compression`] solves each round given a connected vertex cover `Z`
//!   by guessing `Z ∩ S` and reducing to a bipartite Steiner problem;
//! * [`steiner`] solves that problem with a DP over terminal subsets.
//!
//! [`oracle`] holds brute-force references and the component-bound checks,
//! [`io`] the line-oriented graph file format and a seeded generator.

pub mod approx;
pub mod compression;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod solver;
pub mod steiner;

pub use compression::{CompressionInstance, SplitResult, SplitStatus, WorkLedger};
pub use error::{Error, Result};
pub use graph::{ContractionMap, Graph, RootedTree, VertexSet};
pub use io::GraphFile;
pub use solver::{Classification, CvcSolution, SolveOptions, SolveStats};
pub use steiner::{SteinerInstance, SteinerSolution};

/// Exact solution count. Counts of connected vertex covers overflow any
/// machine word long before the algorithms stop being practical.
pub type Count = num_bigint::BigUint;

/// Default cap on DP table cells, overridable per solve.
pub const DEFAULT_CELL_LIMIT: usize = 1 << 28;

//! Edge-addition solvers for hiding leaders in networks.
//!
//! A network's vertices are split into leaders and followers. The goal is to
//! add few follower-follower edges so that at least `d` followers reach the
//! centrality of the most central leader, under either degree or core
//! centrality.

pub mod bench;
pub mod centrality;
pub mod degree;
pub mod generators;
pub mod graph;
pub mod hide_core;
pub mod instance;
pub mod io;
pub mod oracle;

pub use centrality::{core_numbers, Centrality, CoreDecomposition};
pub use graph::{Edge, Graph, GraphError, VertexId, VertexPartition};
pub use instance::{
    verify, Algorithm, Decision, EdgeAdditionPlan, HidingInstance, SolveError, Verdict,
};

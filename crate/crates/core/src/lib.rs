//! Tree-partitions of bounded-degree graphs via treewidth, plus exact oracles,
//! hardness gadgets and subdivision bridges.

pub mod bridge;
pub mod decomp;
pub mod exact;
pub mod frontend;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod separator;
pub mod wood;

pub use decomp::{TreeCutDecomposition, TreeDecomposition, TreePartition};
pub use graph::{Graph, GraphBuilder};

/// An exhaustive solver was handed an instance above its vertex cap.
#[derive(Debug, thiserror::Error, Clone, Copy, PartialEq, Eq)]
#[error("instance has {n} vertices, above the cap of {cap}")]
pub struct CapacityError {
    pub n: usize,
    pub cap: usize,
}

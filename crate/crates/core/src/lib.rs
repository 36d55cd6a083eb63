//! Homomorphism counts, Weisfeiler-Leman refinement, CFI graphs and the
//! tools needed to decide which subgraph counts k-WL can see.

pub mod audit;
pub mod cfi;
pub mod cops;
pub mod corpus;
pub mod error;
pub mod format;
pub mod graph;
pub mod hom;
pub mod iso;
pub mod oddo;
pub mod partitions;
pub mod spasm;
pub mod suite;
pub mod treewidth;
pub mod wl;

pub use error::{Error, Result};
pub use graph::{components, disjoint_union, quotient, Graph, Partition, VertexMap};

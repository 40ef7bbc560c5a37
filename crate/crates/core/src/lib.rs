//! Critical independent sets and related invariants of finite simple graphs.

pub mod analysis;
pub mod checks;
pub mod critical;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod ke;
pub mod matching;
pub mod mis;
pub mod oracle;
pub mod ore;
pub mod parse;
pub mod props;
pub mod vertex_set;

pub use checks::{Check, Limits, Status, Value};
pub use error::{Error, Result};
pub use graph::{BipartitePartition, Graph, IdMap, Side};
pub use vertex_set::VertexSet;

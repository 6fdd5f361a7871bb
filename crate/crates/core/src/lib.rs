pub mod canon;
pub mod coloring;
pub mod corpus;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod tripod;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_N};

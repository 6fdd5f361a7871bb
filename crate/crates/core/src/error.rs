use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph capacity exceeded: {n} vertices (maximum {max})")]
    Capacity { n: usize, max: usize },
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("no edge between {u} and {v}")]
    NoSuchEdge { u: usize, v: usize },
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("graph is not {k}-colorable")]
    NotColorable { k: usize },
    #[error("size cap exceeded: {n} > {max}")]
    SizeCap { n: usize, max: usize },
    #[error("fixture error at line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error("vertices {0:?} do not form a triangle")]
    NotATriangle([usize; 3]),
    #[error("vertex {vertex} has neighbors in all three tripod classes")]
    ContractionHypothesis { vertex: usize },
    #[error("tripod is not maximal: vertex {vertex} can still be added")]
    TripodNotMaximal { vertex: usize },
    #[error("invalid profile: {0}")]
    Profile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

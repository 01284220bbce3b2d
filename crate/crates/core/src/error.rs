use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("empty facet")]
    EmptyFacet,
    #[error("facet {inner:?} is contained in facet {outer:?}")]
    FacetContained { inner: Vec<u32>, outer: Vec<u32> },
    #[error("{0:?} is not a facet of the complex")]
    NotAFacet(Vec<u32>),
    #[error("complex is not pure of dimension {r}: offending facet {facet:?}")]
    NotPure { r: u32, facet: Vec<u32> },
    #[error("dimension {k} out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: u32, dim: u32 },
    #[error("budget exceeded: {task} needs ~{estimate} work units, budget is {budget}")]
    BudgetExceeded {
        task: String,
        estimate: String,
        budget: u64,
    },
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("no leaf found; every minimal connected cover has one")]
    NoLeaf,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

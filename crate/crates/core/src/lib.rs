//! Exact combinatorics and topology of minimally connected pure simplicial
//! complexes: recognition and exhaustive enumeration, integer homology via
//! Smith normal form, labeled r-tree counting and embedding, explicit
//! constructions with prescribed homology, seeded random-complex threshold
//! experiments, and exact-rational scans of the associated rate function.

#![forbid(unsafe_code)]

pub mod budget;
pub mod complex;
pub mod construct;
pub mod error;
pub mod homology;
pub mod mcc;
pub mod rtree;
pub mod util;

pub use budget::Budget;
pub use complex::{wedge, ComponentPartition, PureComplex, SimplicialComplex};
pub use error::{Error, Result};

//! Exact path homology and directed flag complex homology of finite
//! digraphs, with closed-form predictions for feed-forward network
//! architectures and Betti curves over weight-threshold filtrations.
//!
//! Homology computations are exposed as engines behind
//! [`engine::HomologyEngine`] and looked up by name in an
//! [`engine::EngineRegistry`].

pub mod dfc;
pub mod edgelist;
pub mod engine;
pub mod error;
pub mod filtration;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod path;
pub mod summary;

pub use engine::{EngineRegistry, HomologyEngine, HomologyParams};
pub use error::{Error, Result};
pub use graph::{Digraph, MlpSpec, UndirectedGraph, WeightedDigraph};
pub use linalg::{FieldSpec, Scalar, SparseMatrix};
pub use summary::{DegreeStats, HomologySummary};

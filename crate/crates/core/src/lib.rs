//! Weak saturation numbers: graph primitives, the `F`-bootstrap percolation
//! engine, an exact solver over small hosts, explicit saturating
//! constructions with replayable certificates, and a tree classifier.

pub mod canon;
pub mod classify;
pub mod constructions;
pub mod enumerate;
pub mod formulas;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod notation;
pub mod par;
pub mod pattern;
pub mod percolation;
pub mod reproduce;
pub mod solver;
pub mod tree;

pub use error::{CertificateError, ConstructionError, GraphError, PercolationError, ReproduceError, SolveError};
pub use graph::{edge, Edge, Graph};
pub use par::Execution;
pub use pattern::{EndStar, Pattern};
pub use percolation::{Certificate, Step};
pub use tree::{tree_features, CaterpillarSpec, TreeFeatures};

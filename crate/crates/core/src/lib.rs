//! Generalised local complementation on graphs and the local-unitary
//! equivalence of graph states.
//!
//! Vertices are `0..n` and the index order is the vertex order used by the
//! standard form. Graphs are values: every transformation returns a new graph.

pub mod bitset;
pub mod caps;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod genlc;
pub mod graph;
pub mod io;
pub mod localsets;
pub mod qoracle;
pub mod random;
pub mod standard;

pub use bitset::VertexSet;
pub use caps::Caps;
pub use equivalence::{EquivalenceCertificate, Level, LocalCliffordOp, Obstruction, Verdict};
pub use error::{Error, Result};
pub use families::{FamilySpec, HierarchyCheck, RepeaterKind, Variant};
pub use genlc::{IncidenceReport, VertexMultiset};
pub use graph::{CutMatrixReport, Graph};
pub use localsets::{LocalSetRecord, TypePartition, VertexType};
pub use standard::{Move, StandardFormResult};

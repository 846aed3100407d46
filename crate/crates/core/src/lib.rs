//! Dominating clique minors in 2K2-free graphs: exact oracles, a constructive
//! extractor for models with χ(G) branch sets, and a batch counterexample hunt.

pub mod exact;
pub mod extraction;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod hunt;
pub mod patterns;

pub use exact::{MinorModel, Violation};
pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use extraction::{extract_dominating, extract_dominating_with, extract_micu_minor, ExtractOptions, ExtractionError};

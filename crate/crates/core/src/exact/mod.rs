//! Exact (exponential-time) oracles: chromatic number, clique number,
//! clique minors and dominating clique minors.

use std::time::Instant;

use thiserror::Error;

pub mod clique;
pub mod coloring;
pub mod minors;
pub mod verify;

pub use clique::{clique_number, independence_number, max_clique, max_clique_within};
pub use coloring::{chromatic_number, is_proper_coloring, k_colorable, optimal_coloring, optimal_coloring_until, Coloring, KSearch};
pub use minors::{
    dominating_hadwiger_number, for_each_connected_set, hadwiger_number, has_dominating_kt, has_kt_minor,
};
pub use verify::{verify_dominating_model, verify_ordinary_model, MinorModel, Violation};

/// Default vertex cap for the minor searches.
pub const DEFAULT_MINOR_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the exact-search cap of {cap}")]
    Capacity { n: usize, cap: usize },
    #[error("time budget exhausted")]
    Timeout,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_vertices: DEFAULT_MINOR_CAP, deadline: None }
    }
}

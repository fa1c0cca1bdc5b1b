//! Algorithms for cubic multigraphs: decycling numbers, maximum-genus
//! certificates (Xuong trees and Nebeský witnesses), cyclic edge
//! connectivity, stable/coherent decycling partitions, canonical 3-cut
//! decompositions and the graph constructions these results live on.
//!
//! The crate is `no_std` (with `alloc`); all graph values are immutable
//! after construction and every operation is a pure function, so shared
//! references can be used freely across threads. Searches that need
//! randomness take an explicit seed and are fully deterministic.
//!
//! Everything is sized for exact, desk-scale work: graphs are capped at
//! 256 edges, exhaustive routines carry explicit vertex caps and budgeted
//! searches report honest `Unknown` outcomes instead of guessing.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canonical;
pub mod connectivity;
pub mod decomposition;
pub mod decycling;
pub mod generators;
pub mod genus;
pub mod graph;
pub mod rng;
pub mod set;

pub use canonical::{canonical_code, is_isomorphic, CanonicalCode};
pub use graph::{CubicGraph, Graph};
pub use set::{Dart, Edge, EdgeSet, Vertex, VertexSet};

use alloc::string::String;

/// Outcome of a complete or budgeted search for some object.
///
/// `NoneExhausted` is a *positive* mathematical result (the search space
/// was fully traversed and the object does not exist), while `Unknown`
/// only means the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NoneExhausted(ExhaustionProof),
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_none_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::NoneExhausted(_))
    }
}

/// Record that a negative search answer was obtained by complete
/// enumeration rather than by giving up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionProof {
    /// Human-readable description of the space that was enumerated.
    pub space: String,
    /// Number of search nodes visited.
    pub nodes: u64,
    /// True iff the enumeration ran to completion.
    pub complete: bool,
}

/// Step budget and seed for the randomized certificate searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub steps: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { steps: 200_000, seed: 0xDEC }
    }
}

//! Exact computations for maximizing `k_t`, the number of `t`-cliques, over
//! graphs with a fixed edge count `m` and maximum degree at most `r`.
//!
//! The crate provides the objects needed to test the conjecture that
//! `aK_{r+1} ∪ C(b)` is extremal (`m = a·C(r+1, 2) + b`, `C(b)` the colex
//! graph): bitset graphs with clique counting ([`graph`]), colex arithmetic
//! and constructions ([`colex`]), the cluster folding machinery ([`cluster`]),
//! degree-multiset bounds ([`multiset`]), an isomorph-free exhaustive search
//! ([`search`]), and verification suites producing machine-readable reports
//! ([`verify`], [`report`]).

pub mod cluster;
pub mod colex;
pub mod graph;
pub mod graph6;
pub mod instances;
pub mod multiset;
pub mod report;
pub mod search;
pub mod verify;

pub use colex::{binomial, decompose, g_t, ColexDecomposition};
pub use graph::{Graph, GraphError, MAX_VERTICES};

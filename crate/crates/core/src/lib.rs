//! Exact algorithms for the stable cutset problem.
//!
//! A stable cutset of a connected graph is a set of pairwise non-adjacent
//! vertices whose removal disconnects the graph. This crate provides:
//!
//! - an annotated-graph model with label propagation ([`annotate`]);
//! - a (3,2)-CSP encoding with two-valued variable elimination and an exact
//!   solver ([`csp`]);
//! - a triangle-decomposition branching solver over vertex-set families
//!   ([`decompose`], [`branching`]);
//! - a measure-and-conquer style branching solver and its 3-colouring twin
//!   ([`mnc`]);
//! - polynomial and kernelisation algorithms for graphs of high minimum
//!   degree ([`mindeg`]);
//! - numeric reproduction of the branching-factor analysis ([`analysis`]);
//! - instance generators and a brute-force oracle ([`generators`],
//!   [`oracle`]).
//!
//! With the default `parallel` feature, instance sweeps run on rayon;
//! disabling it yields a fully sequential build with identical results.

pub mod analysis;
pub mod annotate;
pub mod branching;
pub mod csp;
pub mod decompose;
pub mod error;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod mindeg;
pub mod mnc;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexSet};

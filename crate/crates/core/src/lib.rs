//! Bounds for the maximum k-colorable subgraph problem.

pub mod chrom;
pub mod conic;
pub mod graph;
pub mod heur;
pub mod relax;
pub mod scheme;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;

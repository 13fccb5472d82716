//! Symmetry reduction for graphs in the Hamming and Johnson association
//! schemes. Character tables are computed in exact integer arithmetic and
//! self-checked; each bound model collapses to a program over one
//! coefficient per scheme class.

mod reduced;
mod table;

use crate::conic::SolveError;
use crate::graph::GraphError;

pub use reduced::{build_reduced, reduced_bound, ReducedBound, ReducedModel, ReducedProgram};
pub use table::{
    character_table, eberlein, krawtchouk, SchemeFamily, SchemeSpec, MAX_SCHEME_DEGREE,
    MAX_SCHEME_VERTICES,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("invalid scheme parameters: {0}")]
    InvalidParameters(String),
    #[error("index out of range: i = {i}, u = {u}, degree {d}")]
    OutOfRange { i: u32, u: u32, d: u32 },
    #[error("scheme too large: {0}")]
    TooLarge(String),
    #[error("character table self-check failed: {0}")]
    SelfCheck(String),
    #[error("k = {k} is out of range for {n} vertices")]
    KOutOfRange { k: usize, n: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

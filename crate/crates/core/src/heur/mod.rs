//! Lower bounds for the maximum k-colorable subgraph problem: a stable-set
//! heuristic on `K_k □ G`, greedy plus tabu search, and an exact
//! branch-and-prune oracle for tiny graphs.

mod exact;
mod stable;
mod tabu;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use exact::{exact_alpha_k, exact_alpha_k_with, ExactCaps};
pub use stable::{min_degree_stable_set, product_heuristic_lb, PRODUCT_VERTEX_CAP};
pub use tabu::{greedy_coloring, tabu_lb, TabuParams};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HeurError {
    #[error("assignment has {got} entries for a graph on {n} vertices")]
    LengthMismatch { got: usize, n: usize },
    #[error("vertex {vertex} has color {color} outside 0..={k}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        k: usize,
    },
    #[error("edge {{{i}, {j}}} joins two vertices of color {color}")]
    Improper { i: usize, j: usize, color: usize },
    #[error("{what} = {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Partial coloring with colors `1..=k`; `0` marks an uncolored vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorAssignment {
    color: Vec<usize>,
    k: usize,
}

impl ColorAssignment {
    pub fn uncolored(n: usize, k: usize) -> Self {
        Self {
            color: vec![0; n],
            k,
        }
    }

    /// Checked constructor: the assignment must be proper on `g`.
    pub fn new(g: &Graph, color: Vec<usize>, k: usize) -> Result<Self, HeurError> {
        let a = Self { color, k };
        a.validate(g)?;
        Ok(a)
    }

    pub fn color(&self) -> &[usize] {
        &self.color
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of colored vertices.
    pub fn value(&self) -> usize {
        self.color.iter().filter(|&&c| c != 0).count()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), HeurError> {
        if self.color.len() != g.n() {
            return Err(HeurError::LengthMismatch {
                got: self.color.len(),
                n: g.n(),
            });
        }
        if let Some((v, &c)) = self.color.iter().enumerate().find(|(_, &c)| c > self.k) {
            return Err(HeurError::ColorOutOfRange {
                vertex: v,
                color: c,
                k: self.k,
            });
        }
        for &(i, j) in g.edges() {
            let c = self.color[i];
            if c != 0 && c == self.color[j] {
                return Err(HeurError::Improper { i, j, color: c });
            }
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    /// Vertices of each color `1..=k`.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.color.iter().enumerate() {
            if c != 0 {
                out[c - 1].push(v);
            }
        }
        out
    }
}

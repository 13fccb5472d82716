//! Simple undirected graphs, DIMACS `.col` I/O, structured generators and
//! the graph algebra needed by the bound models.
//!
//! Vertices are `0..n`. The edge list is canonical: every pair is stored as
//! `(i, j)` with `i < j` and the list is sorted, so two graphs with the same
//! vertex count and edge set compare equal regardless of how they were built.

mod bench;
mod dimacs;
mod family;

use std::fmt;

use faer::Mat;

pub use bench::{
    cfat, cycle, empty, gnp, insertions, keller, mycielski, mycielski_family, path, petersen, queen,
};
pub use dimacs::{parse_dimacs, write_dimacs};
pub(crate) use family::{binomial_u128, digits, subsets_lex};
pub use family::{
    binomial_u64, complete, hamming, hamming_le, johnson, kneser, GraphFamily,
    MAX_GENERATED_VERTICES,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{msg}, line {line}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph on {n} vertices exceeds the configured cap of {cap}")]
    TooLarge { n: u128, cap: usize },
    #[error("density is undefined for graphs with fewer than two vertices")]
    DensityUndefined,
}

/// Immutable simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (i, j) in edges {
            b.add_edge(i, j)?;
        }
        Ok(b.build())
    }

    /// Graph without edges.
    pub fn edgeless(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical sorted edge list with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Non-adjacent pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n)
                .filter(move |&j| !self.has_edge(i, j))
                .map(move |j| (i, j))
        })
    }

    /// Edge density in percent: `100 * 2|E| / (n (n - 1))`.
    pub fn density_percent(&self) -> Result<f64, GraphError> {
        if self.n < 2 {
            return Err(GraphError::DensityUndefined);
        }
        Ok(200.0 * self.m() as f64 / (self.n as f64 * (self.n as f64 - 1.0)))
    }

    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for (i, j) in self.non_edges() {
            b.push_unchecked(i, j);
        }
        b.build()
    }

    /// `K_k □ G` with vertex `(r, i)` at index `r * n + i`.
    pub fn cartesian_product_complete(&self, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameters(
                "cartesian product with K_0".into(),
            ));
        }
        let n = self.n;
        let mut b = GraphBuilder::new(k * n);
        for r in 0..k {
            for &(i, j) in &self.edges {
                b.push_unchecked(r * n + i, r * n + j);
            }
            for l in r + 1..k {
                for i in 0..n {
                    b.push_unchecked(r * n + i, l * n + i);
                }
            }
        }
        Ok(b.build())
    }

    /// Dense adjacency matrix.
    pub fn adjacency(&self) -> Mat<f64> {
        Mat::from_fn(self.n, self.n, |i, j| {
            if i != j && self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// `Diag(degrees) - adjacency`.
    pub fn laplacian(&self) -> Mat<f64> {
        let mut l = self.adjacency();
        for i in 0..self.n {
            for j in 0..self.n {
                l[(i, j)] = -l[(i, j)];
            }
            l[(i, i)] = self.degree(i) as f64;
        }
        l
    }

    /// Induced subgraph on `vertices` (relabelled in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (c, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    b.push_unchecked(a, c);
                }
            }
        }
        b.build()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .finish()
    }
}

/// Incremental builder used by the parsers and generators.
pub(crate) struct GraphBuilder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    count: usize,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
            count: 0,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        self.push_unchecked(i, j);
        Ok(())
    }

    #[inline]
    pub(crate) fn push_unchecked(&mut self, i: usize, j: usize) {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1u64 << (j % 64);
        if *w & mask == 0 {
            *w |= mask;
            self.bits[j * self.words + i / 64] |= 1u64 << (i % 64);
            self.count += 1;
        }
    }

    pub(crate) fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        let mut edges = Vec::with_capacity(self.count);
        for (i, row) in adj.iter_mut().enumerate() {
            let base = i * self.words;
            for w in 0..self.words {
                let mut word = self.bits[base + w];
                while word != 0 {
                    let j = w * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    row.push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph {
            n: self.n,
            edges,
            adj,
            words: self.words,
            bits: self.bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_triangle_is_empty() {
        let k3 = complete(3);
        assert_eq!(k3.complement(), Graph::edgeless(3));
    }

    #[test]
    fn complement_is_involution_on_petersen() {
        let p = petersen();
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn complement_counts_missing_pairs() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(g.complement().m(), 5);
    }

    #[test]
    fn product_with_k1_is_identity() {
        let p = petersen();
        assert_eq!(p.cartesian_product_complete(1).unwrap(), p);
    }

    #[test]
    fn product_edge_count() {
        let p = petersen().cartesian_product_complete(2).unwrap();
        assert_eq!((p.n(), p.m()), (20, 40));
    }

    #[test]
    fn product_of_single_vertex_is_complete() {
        let g = Graph::edgeless(1).cartesian_product_complete(3).unwrap();
        assert_eq!(g, complete(3));
    }

    #[test]
    fn product_rejects_k0() {
        assert!(petersen().cartesian_product_complete(0).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(complete(3).density_percent().unwrap(), 100.0);
        let mut b = GraphBuilder::new(200);
        let mut left = 10024;
        'outer: for i in 0..200 {
            for j in i + 1..200 {
                if left == 0 {
                    break 'outer;
                }
                b.push_unchecked(i, j);
                left -= 1;
            }
        }
        let g = b.build();
        assert_eq!(g.m(), 10024);
        assert_eq!(g.density_percent().unwrap().round(), 50.0);
        assert!(Graph::edgeless(1).density_percent().is_err());
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l = complete(2).laplacian();
        for i in 0..2 {
            assert_eq!(l[(i, 0)] + l[(i, 1)], 0.0);
        }
        let l = petersen().laplacian();
        for i in 0..10 {
            let s: f64 = (0..10).map(|j| l[(i, j)]).sum();
            assert_eq!(s, 0.0);
        }
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(2, [(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { .. }
        ));
        let g = Graph::from_edges(3, [(2, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }
}

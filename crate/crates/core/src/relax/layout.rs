use faer::Mat;

use crate::conic::{Affine, ProgramBuilder};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Variable map for models over `Z` (and optionally `X`): one variable per
/// diagonal entry of `Z`, per non-edge pair of `Z`, and per pair of `X`.
/// Edge entries of `Z` and the diagonal of `X` are fixed to zero.
#[derive(Debug, Clone)]
pub struct ReducedLayout {
    n: usize,
    diag: Vec<usize>,
    zpair: Vec<usize>,
    xpair: Vec<usize>,
}

impl ReducedLayout {
    /// Declares the variables in `b`. `with_x` adds one `X` variable per pair.
    pub(crate) fn new(g: &Graph, b: &mut ProgramBuilder, with_x: bool) -> Self {
        let n = g.n();
        let diag = (0..n).map(|_| b.add_var()).collect();
        let mut zpair = vec![NONE; n * n];
        for (i, j) in g.non_edges() {
            let v = b.add_var();
            zpair[i * n + j] = v;
            zpair[j * n + i] = v;
        }
        let mut xpair = vec![NONE; n * n];
        if with_x {
            for i in 0..n {
                for j in i + 1..n {
                    let v = b.add_var();
                    xpair[i * n + j] = v;
                    xpair[j * n + i] = v;
                }
            }
        }
        Self {
            n,
            diag,
            zpair,
            xpair,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_x(&self) -> bool {
        self.n > 1 && self.xpair[1] != NONE
    }

    pub fn diag(&self, i: usize) -> usize {
        self.diag[i]
    }

    /// Variable of `Z_ij`, `None` when fixed to zero. Covers the diagonal.
    pub fn z(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(self.diag[i]);
        }
        let v = self.zpair[i * self.n + j];
        (v != NONE).then_some(v)
    }

    /// Variable of `X_ij`, `None` when fixed to zero.
    pub fn x(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return None;
        }
        let v = self.xpair[i * self.n + j];
        (v != NONE).then_some(v)
    }

    /// `Z_ij` as an expression.
    pub fn z_expr(&self, i: usize, j: usize) -> Affine {
        Affine::default().add_opt(self.z(i, j), 1.0)
    }

    pub fn free_z_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |i| (i + 1..self.n).filter_map(move |j| self.z(i, j).map(|v| (i, j, v))))
    }

    pub fn free_x_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |i| (i + 1..self.n).filter_map(move |j| self.x(i, j).map(|v| (i, j, v))))
    }

    /// Dense `(Z, X)` at primal point `x`.
    pub fn point(&self, x: &[f64], k: usize) -> ReducedPoint {
        let n = self.n;
        let z = Mat::from_fn(n, n, |i, j| self.z(i, j).map_or(0.0, |v| x[v]));
        let xm = Mat::from_fn(n, n, |i, j| self.x(i, j).map_or(0.0, |v| x[v]));
        ReducedPoint { z, x: xm, k }
    }
}

/// Color-aggregated point: `Z = Σ_r Y^{rr}`, `X = Σ_{r≠l} Y^{rl} / (k − 1)`.
#[derive(Debug, Clone)]
pub struct ReducedPoint {
    pub z: Mat<f64>,
    pub x: Mat<f64>,
    pub k: usize,
}

impl ReducedPoint {
    pub fn zeros(n: usize, k: usize) -> Self {
        Self {
            z: Mat::zeros(n, n),
            x: Mat::zeros(n, n),
            k,
        }
    }

    /// Aggregate of a 0/1 coloring: `color[i] = 0` leaves `i` uncolored.
    pub fn from_coloring(color: &[usize], k: usize) -> Self {
        let n = color.len();
        let xs = if k > 1 { 1.0 / (k - 1) as f64 } else { 0.0 };
        let z = Mat::from_fn(n, n, |i, j| {
            f64::from(color[i] != 0 && color[i] == color[j])
        });
        let x = Mat::from_fn(n, n, |i, j| {
            if i != j && color[i] != 0 && color[j] != 0 && color[i] != color[j] {
                xs
            } else {
                0.0
            }
        });
        Self { z, x, k }
    }

    pub fn n(&self) -> usize {
        self.z.nrows()
    }
}

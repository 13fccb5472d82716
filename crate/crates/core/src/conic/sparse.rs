use serde::{Deserialize, Serialize};

/// Compressed sparse column matrix without stored zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CscMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub colptr: Vec<usize>,
    pub rowval: Vec<usize>,
    pub nzval: Vec<f64>,
}

impl CscMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            colptr: vec![0; ncols + 1],
            rowval: Vec::new(),
            nzval: Vec::new(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// resulting zeros dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, trip: &[(usize, usize, f64)]) -> Self {
        let mut count = vec![0usize; ncols + 1];
        for &(r, c, _) in trip {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            count[c + 1] += 1;
        }
        for c in 0..ncols {
            count[c + 1] += count[c];
        }
        let mut next = count.clone();
        let mut rows = vec![0usize; trip.len()];
        let mut vals = vec![0.0; trip.len()];
        for &(r, c, v) in trip {
            rows[next[c]] = r;
            vals[next[c]] = v;
            next[c] += 1;
        }
        let mut colptr = Vec::with_capacity(ncols + 1);
        let mut rowval = Vec::with_capacity(trip.len());
        let mut nzval = Vec::with_capacity(trip.len());
        colptr.push(0);
        let mut order: Vec<usize> = Vec::new();
        for c in 0..ncols {
            order.clear();
            order.extend(count[c]..count[c + 1]);
            order.sort_by_key(|&k| rows[k]);
            let mut k = 0;
            while k < order.len() {
                let r = rows[order[k]];
                let mut v = 0.0;
                while k < order.len() && rows[order[k]] == r {
                    v += vals[order[k]];
                    k += 1;
                }
                if v != 0.0 {
                    rowval.push(r);
                    nzval.push(v);
                }
            }
            colptr.push(rowval.len());
        }
        Self {
            nrows,
            ncols,
            colptr,
            rowval,
            nzval,
        }
    }

    pub fn nnz(&self) -> usize {
        self.nzval.len()
    }

    /// `y = A x`.
    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        self.mul_add(x, y);
    }

    /// `y += A x`.
    pub fn mul_add(&self, x: &[f64], y: &mut [f64]) {
        for c in 0..self.ncols {
            let xc = x[c];
            if xc == 0.0 {
                continue;
            }
            for k in self.colptr[c]..self.colptr[c + 1] {
                y[self.rowval[k]] += self.nzval[k] * xc;
            }
        }
    }

    /// `x = Aᵀ y`.
    pub fn tmul(&self, y: &[f64], x: &mut [f64]) {
        for c in 0..self.ncols {
            let mut acc = 0.0;
            for k in self.colptr[c]..self.colptr[c + 1] {
                acc += self.nzval[k] * y[self.rowval[k]];
            }
            x[c] = acc;
        }
    }

    /// Row-major copy (CSC of the transpose).
    pub fn transpose(&self) -> CscMatrix {
        let mut count = vec![0usize; self.nrows + 1];
        for &r in &self.rowval {
            count[r + 1] += 1;
        }
        for r in 0..self.nrows {
            count[r + 1] += count[r];
        }
        let mut next = count.clone();
        let mut rowval = vec![0; self.nnz()];
        let mut nzval = vec![0.0; self.nnz()];
        for c in 0..self.ncols {
            for k in self.colptr[c]..self.colptr[c + 1] {
                let r = self.rowval[k];
                rowval[next[r]] = c;
                nzval[next[r]] = self.nzval[k];
                next[r] += 1;
            }
        }
        CscMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            colptr: count,
            rowval,
            nzval,
        }
    }

    /// Scales rows by `e` and columns by `d`: `A <- diag(e) A diag(d)`.
    pub fn scale(&mut self, e: &[f64], d: &[f64]) {
        for c in 0..self.ncols {
            for k in self.colptr[c]..self.colptr[c + 1] {
                self.nzval[k] *= e[self.rowval[k]] * d[c];
            }
        }
    }

    /// Infinity norm of every column.
    pub fn col_norms(&self) -> Vec<f64> {
        (0..self.ncols)
            .map(|c| {
                self.nzval[self.colptr[c]..self.colptr[c + 1]]
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs()))
            })
            .collect()
    }

    /// Infinity norm of every row.
    pub fn row_norms(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.nrows];
        for (k, &r) in self.rowval.iter().enumerate() {
            out[r] = out[r].max(self.nzval[k].abs());
        }
        out
    }

    /// Appends the rows of `other` (same column count) below `self`.
    pub fn vstack(&self, other: &CscMatrix) -> CscMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut colptr = Vec::with_capacity(self.ncols + 1);
        let mut rowval = Vec::with_capacity(self.nnz() + other.nnz());
        let mut nzval = Vec::with_capacity(self.nnz() + other.nnz());
        colptr.push(0);
        for c in 0..self.ncols {
            for k in self.colptr[c]..self.colptr[c + 1] {
                rowval.push(self.rowval[k]);
                nzval.push(self.nzval[k]);
            }
            for k in other.colptr[c]..other.colptr[c + 1] {
                rowval.push(other.rowval[k] + self.nrows);
                nzval.push(other.nzval[k]);
            }
            colptr.push(rowval.len());
        }
        CscMatrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            colptr,
            rowval,
            nzval,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let a =
            CscMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 0, 2.0), (1, 1, 1.0), (1, 1, -1.0)]);
        assert_eq!(a.nnz(), 1);
        let mut y = vec![0.0; 2];
        a.mul(&[1.0, 5.0], &mut y);
        assert_eq!(y, vec![3.0, 0.0]);
    }

    #[test]
    fn transpose_product_agrees() {
        let a = CscMatrix::from_triplets(3, 2, &[(0, 1, 2.0), (2, 0, -1.0), (1, 1, 4.0)]);
        let mut x = vec![0.0; 2];
        a.tmul(&[1.0, 1.0, 1.0], &mut x);
        assert_eq!(x, vec![-1.0, 6.0]);
        let t = a.transpose();
        let mut x2 = vec![0.0; 2];
        t.mul(&[1.0, 1.0, 1.0], &mut x2);
        assert_eq!(x, x2);
    }

    #[test]
    fn vstack_offsets_rows() {
        let a = CscMatrix::from_triplets(1, 2, &[(0, 0, 1.0)]);
        let b = CscMatrix::from_triplets(1, 2, &[(0, 1, 2.0)]);
        let c = a.vstack(&b);
        let mut y = vec![0.0; 2];
        c.mul(&[1.0, 1.0], &mut y);
        assert_eq!(y, vec![1.0, 2.0]);
    }
}

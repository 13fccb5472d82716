use faer::linalg::solvers::SolveCore;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::{SparseColMatRef, SymbolicSparseColMat};
use faer::{Conj, MatMut, Side};

use super::sparse::CscMatrix;
use super::SolveError;

/// Sparse Cholesky factor of `σI + ρ AᵀWA` with the symbolic analysis
/// shared across penalty updates.
pub(crate) struct ReducedKkt {
    symbolic_mat: SymbolicSparseColMat<usize>,
    /// lower-triangle values of `AᵀWA`
    gram: Vec<f64>,
    diag_pos: Vec<usize>,
    sigma: f64,
    values: Vec<f64>,
    symbolic: SymbolicLlt<usize>,
    factor: Llt<usize, f64>,
}

impl ReducedKkt {
    /// `a_rows` is `Aᵀ` stored column-wise, i.e. row `r` of `A` is column `r`.
    pub(crate) fn new(
        a_rows: &CscMatrix,
        n: usize,
        weight: &[f64],
        sigma: f64,
        rho: f64,
    ) -> Result<Self, SolveError> {
        let mut trip = Vec::new();
        for j in 0..n {
            trip.push((j, j, 0.0));
        }
        for r in 0..a_rows.ncols {
            let (lo, hi) = (a_rows.colptr[r], a_rows.colptr[r + 1]);
            let w = weight[r];
            for p in lo..hi {
                let (vp, ap) = (a_rows.rowval[p], a_rows.nzval[p]);
                for q in lo..hi {
                    let (vq, aq) = (a_rows.rowval[q], a_rows.nzval[q]);
                    if vp >= vq {
                        trip.push((vp, vq, w * ap * aq));
                    }
                }
            }
        }
        // the diagonal survives with a placeholder so the pattern is stable
        let mut gram_m = lower_with_diag(n, &trip);
        let diag_pos: Vec<usize> = (0..n)
            .map(|j| {
                let p = gram_m.colptr[j];
                debug_assert_eq!(gram_m.rowval[p], j);
                p
            })
            .collect();
        let gram = std::mem::take(&mut gram_m.nzval);
        let symbolic_mat =
            SymbolicSparseColMat::new_checked(n, n, gram_m.colptr, None, gram_m.rowval);
        let symbolic = SymbolicLlt::try_new(symbolic_mat.as_ref(), Side::Lower)
            .map_err(|e| SolveError::Factorization(format!("{e:?}")))?;
        let mut values = vec![0.0; gram.len()];
        fill_values(&mut values, &gram, &diag_pos, sigma, rho);
        let factor = Llt::try_new_with_symbolic(
            symbolic.clone(),
            SparseColMatRef::new(symbolic_mat.as_ref(), &values),
            Side::Lower,
        )
        .map_err(|e| SolveError::Factorization(format!("{e:?}")))?;
        Ok(Self {
            symbolic_mat,
            gram,
            diag_pos,
            sigma,
            values,
            symbolic,
            factor,
        })
    }

    pub(crate) fn refactor(&mut self, rho: f64) -> Result<(), SolveError> {
        fill_values(
            &mut self.values,
            &self.gram,
            &self.diag_pos,
            self.sigma,
            rho,
        );
        self.factor = Llt::try_new_with_symbolic(
            self.symbolic.clone(),
            SparseColMatRef::new(self.symbolic_mat.as_ref(), &self.values),
            Side::Lower,
        )
        .map_err(|e| SolveError::Factorization(format!("{e:?}")))?;
        Ok(())
    }

    pub(crate) fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        let m = MatMut::from_column_major_slice_mut(rhs, n, 1);
        self.factor.solve_in_place_with_conj(Conj::No, m);
    }
}

fn fill_values(values: &mut [f64], gram: &[f64], diag_pos: &[usize], sigma: f64, rho: f64) {
    for (v, g) in values.iter_mut().zip(gram) {
        *v = rho * g;
    }
    for &p in diag_pos {
        values[p] += sigma;
    }
}

/// Lower-triangular CSC keeping every diagonal entry even when it sums to zero.
fn lower_with_diag(n: usize, trip: &[(usize, usize, f64)]) -> CscMatrix {
    let mut shifted: Vec<(usize, usize, f64)> = trip.to_vec();
    shifted.extend((0..n).map(|j| (j, j, 1.0)));
    let mut m = CscMatrix::from_triplets(n, n, &shifted);
    for j in 0..n {
        let p = m.colptr[j];
        m.nzval[p] -= 1.0;
    }
    m
}


#[cfg(test)]
mod accuracy {
    use super::*;
    use crate::graph::petersen;
    use crate::relax::build_theta2;

    #[test]
    fn theta2_system_residual() {
        let m = build_theta2(&petersen(), 2).unwrap().program;
        let n = m.nvars();
        let at = m.a.transpose();
        let w = vec![1.0; m.nslack()];
        let kkt = ReducedKkt::new(&at, n, &w, 1e-6, 1.0).unwrap();
        let rhs: Vec<f64> = (0..n).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        let mut x = rhs.clone();
        kkt.solve_in_place(&mut x);
        // M x = σx + Aᵀ(A x)
        let mut ax = vec![0.0; m.nslack()];
        m.a.mul(&x, &mut ax);
        let mut mx = vec![0.0; n];
        at.mul(&ax, &mut mx);
        let err = (0..n)
            .map(|i| (mx[i] + 1e-6 * x[i] - rhs[i]).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "residual {err}");
    }
}

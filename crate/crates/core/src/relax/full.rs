use super::{check_k, ModelProgram, RelaxError};
use crate::conic::{Affine, ProgramBuilder};
use crate::graph::Graph;

/// Cap on `n k` for the full vector lifting.
pub const VECTOR_LIFT_CAP: usize = 60;
/// Cap on `n + k` for the full matrix lifting.
pub const MATRIX_LIFT_CAP: usize = 80;

/// Vector lifting over `Y ∈ S^{nk}` with `(r, i)` at index `r n + i`.
/// `rlt` adds the pair-product inequality families.
pub fn build_vector_lifting_full(
    g: &Graph,
    k: usize,
    rlt: bool,
) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    let nk = n * k;
    if nk > VECTOR_LIFT_CAP {
        return Err(RelaxError::TooLarge {
            size: nk,
            cap: VECTOR_LIFT_CAP,
        });
    }
    let mut b = ProgramBuilder::new(0);
    let mut var = vec![None; nk * nk];
    for p in 0..nk {
        for q in p..nk {
            let (r, i, l, j) = (p / n, p % n, q / n, q % n);
            let fixed = if r == l {
                i != j && g.has_edge(i, j)
            } else {
                i == j
            };
            if !fixed {
                let v = b.add_var();
                var[p * nk + q] = Some(v);
                var[q * nk + p] = Some(v);
            }
        }
    }
    let y = |p: usize, q: usize| var[p * nk + q];
    let ye = |p: usize, q: usize| Affine::default().add_opt(y(p, q), 1.0);
    for p in 0..nk {
        b.objective(y(p, p).expect("diagonal is free"), -1.0);
    }
    let rows: Vec<Affine> = (0..nk)
        .flat_map(|p| (p + 1..nk).filter_map(move |q| y(p, q)))
        .map(Affine::var)
        .collect();
    b.nonneg(rows);
    b.psd(nk + 1, |a, c| match (a, c) {
        (0, 0) => Affine::constant(1.0),
        (a, 0) => ye(a - 1, a - 1),
        (a, c) => ye(a - 1, c - 1),
    });
    if rlt {
        let idx = |r: usize, i: usize| r * n + i;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..i {
                let mut e = Affine::constant(1.0);
                for r in 0..k {
                    e = e
                        .add_opt(y(idx(r, i), idx(r, i)), -1.0)
                        .add_opt(y(idx(r, j), idx(r, j)), -1.0);
                    for l in 0..k {
                        e = e.add_opt(y(idx(r, i), idx(l, j)), 1.0);
                    }
                }
                rows.push(e);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for l in 0..k {
                    let mut e = ye(idx(l, i), idx(l, i));
                    for r in 0..k {
                        e = e.add_opt(y(idx(r, i), idx(l, j)), -1.0);
                    }
                    rows.push(e);
                }
            }
        }
        b.nonneg(rows);
    }
    Ok(ModelProgram::maximize(b.build(), None, k))
}

/// Matrix lifting over `Z ∈ S^n`, `X ∈ R^{n×k}` with
/// `[[I_k, Xᵀ], [X, Z]] ⪰ 0` and `Z_ii = Σ_r X_ir ≤ 1`.
pub fn build_matrix_lifting_full(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    if n + k > MATRIX_LIFT_CAP {
        return Err(RelaxError::TooLarge {
            size: n + k,
            cap: MATRIX_LIFT_CAP,
        });
    }
    let mut b = ProgramBuilder::new(0);
    let lay = super::ReducedLayout::new(g, &mut b, false);
    let xv: Vec<usize> = (0..n * k).map(|_| b.add_var()).collect();
    for i in 0..n {
        b.objective(lay.diag(i), -1.0);
    }
    b.zero(
        (0..n).map(|i| (0..k).fold(Affine::var(lay.diag(i)), |e, r| e.add(xv[i * k + r], -1.0))),
    );
    let mut rows: Vec<Affine> = (0..n)
        .map(|i| Affine::term(lay.diag(i), -1.0).plus(1.0))
        .collect();
    rows.extend(lay.free_z_pairs().map(|(_, _, v)| Affine::var(v)));
    rows.extend(xv.iter().map(|&v| Affine::var(v)));
    b.nonneg(rows);
    b.psd(k + n, |a, c| {
        if a < k {
            Affine::constant(f64::from(a == c))
        } else if c < k {
            Affine::var(xv[(a - k) * k + c])
        } else {
            lay.z_expr(a - k, c - k)
        }
    });
    Ok(ModelProgram::maximize(b.build(), Some(lay), k))
}

/// `ϑ'` of `K_k □ G`.
pub fn build_theta_prime_product(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    if n * k > VECTOR_LIFT_CAP {
        return Err(RelaxError::TooLarge {
            size: n * k,
            cap: VECTOR_LIFT_CAP,
        });
    }
    let prod = g
        .cartesian_product_complete(k)
        .map_err(|e| RelaxError::Graph(e.to_string()))?;
    if prod.n() == 1 {
        let mut b = ProgramBuilder::new(1);
        b.objective(0, -1.0);
        b.zero([Affine::var(0).plus(-1.0)]);
        return Ok(ModelProgram::maximize(b.build(), None, 1));
    }
    let mut m = super::build_theta_prime_k(&prod, 1)?;
    m.k = k;
    m.layout = None;
    Ok(m)
}

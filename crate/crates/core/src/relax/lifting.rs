use super::{check_k, ModelProgram, ReducedLayout, RelaxError};
use crate::conic::{Affine, ProgramBuilder};
use crate::graph::Graph;

/// `max tr Z  s.t.  Z_ij = 0 (ij ∈ E), Z_ii ≤ 1, Z ≥ 0,
/// [[k, diag(Z)ᵀ], [diag(Z), Z]] ⪰ 0`.
pub fn build_theta3(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    let mut b = ProgramBuilder::new(0);
    let lay = ReducedLayout::new(g, &mut b, false);
    for i in 0..n {
        b.objective(lay.diag(i), -1.0);
    }
    let mut rows: Vec<Affine> = (0..n)
        .map(|i| Affine::term(lay.diag(i), -1.0).plus(1.0))
        .collect();
    rows.extend(lay.free_z_pairs().map(|(_, _, v)| Affine::var(v)));
    b.nonneg(rows);
    b.psd(n + 1, |i, j| match (i, j) {
        (0, 0) => Affine::constant(k as f64),
        (i, 0) => Affine::var(lay.diag(i - 1)),
        (i, j) => lay.z_expr(i - 1, j - 1),
    });
    Ok(ModelProgram::maximize(b.build(), Some(lay), k))
}

/// Optional inequality families on top of the color-reduced vector lifting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairFamilies {
    /// `1 − Z_ii − Z_jj + Z_ij + (k−1)X_ij ≥ 0` for `i > j`.
    pub pair_upper: bool,
    /// `Z_ii − Z_ij − (k−1)X_ij ≥ 0` for `i ≠ j`.
    pub row_dominance: bool,
}

/// Color-reduced vector lifting over `(Z, X)` with the chosen families.
pub fn build_vector_reduced(
    g: &Graph,
    k: usize,
    fam: PairFamilies,
) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    let km1 = (k - 1) as f64;
    let mut b = ProgramBuilder::new(0);
    let lay = ReducedLayout::new(g, &mut b, k > 1);
    for i in 0..n {
        b.objective(lay.diag(i), -1.0);
    }
    let mut rows: Vec<Affine> = lay.free_z_pairs().map(|(_, _, v)| Affine::var(v)).collect();
    rows.extend(lay.free_x_pairs().map(|(_, _, v)| Affine::var(v)));
    b.nonneg(rows);
    let zx = |i: usize, j: usize, f: f64| lay.z_expr(i, j).add_opt(lay.x(i, j), f);
    if k > 1 {
        b.psd(n, |i, j| zx(i, j, -1.0));
    }
    b.psd(n + 1, |i, j| match (i, j) {
        (0, 0) => Affine::constant(1.0),
        (i, 0) => Affine::var(lay.diag(i - 1)),
        (i, j) => zx(i - 1, j - 1, km1),
    });
    if fam.pair_upper {
        let mut rows = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in 0..i {
                rows.push(
                    zx(i, j, km1)
                        .add(lay.diag(i), -1.0)
                        .add(lay.diag(j), -1.0)
                        .plus(1.0),
                );
            }
        }
        b.nonneg(rows);
    }
    if fam.row_dominance {
        let mut rows = Vec::with_capacity(n * (n - 1));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    rows.push(zx(i, j, km1).scaled(-1.0).add(lay.diag(i), 1.0));
                }
            }
        }
        b.nonneg(rows);
    }
    Ok(ModelProgram::maximize(b.build(), Some(lay), k))
}

/// Color-reduced vector lifting without the pair families.
pub fn build_theta2(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    build_vector_reduced(g, k, PairFamilies::default())
}

/// Color-reduced vector lifting with both pair families.
pub fn build_theta1(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    build_vector_reduced(
        g,
        k,
        PairFamilies {
            pair_upper: true,
            row_dominance: true,
        },
    )
}

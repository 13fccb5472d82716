use faer::Side;

use super::{check_k, ModelProgram, ReducedLayout, RelaxError};
use crate::conic::{Affine, ProgramBuilder};
use crate::graph::Graph;

fn theta_common(g: &Graph, k: usize, nonneg: bool) -> Result<ModelProgram, RelaxError> {
    let n = g.n();
    if k < 1 || k + 1 > n {
        return Err(RelaxError::KOutOfRange { k, n });
    }
    let mut b = ProgramBuilder::new(0);
    let lay = ReducedLayout::new(g, &mut b, false);
    for i in 0..n {
        b.objective(lay.diag(i), -1.0);
    }
    for (_, _, v) in lay.free_z_pairs().collect::<Vec<_>>() {
        b.objective(v, -2.0);
    }
    let mut trace = Affine::constant(-(k as f64));
    for i in 0..n {
        trace = trace.add(lay.diag(i), 1.0);
    }
    b.zero([trace]);
    if nonneg {
        let rows: Vec<Affine> = lay.free_z_pairs().map(|(_, _, v)| Affine::var(v)).collect();
        b.nonneg(rows);
    }
    b.psd(n, |i, j| lay.z_expr(i, j));
    if k > 1 {
        b.psd(n, |i, j| {
            let e = lay.z_expr(i, j).scaled(-1.0);
            if i == j {
                e.plus(1.0)
            } else {
                e
            }
        });
    }
    Ok(ModelProgram::maximize(b.build(), Some(lay), k))
}

/// `max ⟨J,Z⟩  s.t.  Z_ij = 0 (ij ∈ E), tr Z = k, Z ⪰ 0, I − Z ⪰ 0`;
/// the last block is dropped for `k = 1`.
pub fn build_theta_k(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    theta_common(g, k, false)
}

/// [`build_theta_k`] with `Z ≥ 0` entrywise.
pub fn build_theta_prime_k(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    theta_common(g, k, true)
}

/// Sum of the `k` largest eigenvalues of `A(t)`, where `A` has ones on the
/// diagonal and on non-edges and `t` on edges.
pub fn fan_upper_bound(g: &Graph, k: usize, edge_value: f64) -> Result<f64, RelaxError> {
    let n = g.n();
    check_k(k, n)?;
    if k > n {
        return Err(RelaxError::KOutOfRange { k, n });
    }
    let a = faer::Mat::from_fn(n, n, |i, j| {
        if i != j && g.has_edge(i, j) {
            edge_value
        } else {
            1.0
        }
    });
    let vals = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| RelaxError::Eigen(format!("{e:?}")))?;
    Ok(vals.iter().rev().take(k).sum())
}

/// Minimizes [`fan_upper_bound`] over `t ∈ [lo, hi]` by golden-section
/// search (the objective is convex in `t`). Returns `(t, bound)`.
pub fn fan_minimized(g: &Graph, k: usize, lo: f64, hi: f64) -> Result<(f64, f64), RelaxError> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = fan_upper_bound(g, k, c)?;
    let mut fd = fan_upper_bound(g, k, d)?;
    for _ in 0..80 {
        if (b - a).abs() < 1e-9 {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = fan_upper_bound(g, k, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = fan_upper_bound(g, k, d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

use super::{ModelProgram, RelaxError};
use crate::conic::{Affine, ProgramBuilder};
use crate::graph::Graph;

fn check_parts(g: &Graph, k: usize, equal: bool) -> Result<(), RelaxError> {
    let n = g.n();
    if k < 2 || k > n {
        return Err(RelaxError::KOutOfRange { k, n });
    }
    if equal && !n.is_multiple_of(k) {
        return Err(RelaxError::Divisibility { n, k });
    }
    Ok(())
}

/// Variables: full symmetric `Z` (diagonal included) and optionally `X`.
struct PartVars {
    n: usize,
    z: Vec<usize>,
    x: Option<Vec<usize>>,
}

impl PartVars {
    fn new(n: usize, b: &mut ProgramBuilder, with_x: bool) -> Self {
        let mut z = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = b.add_var();
                z[i * n + j] = v;
                z[j * n + i] = v;
            }
        }
        let x = with_x.then(|| {
            let mut x = vec![usize::MAX; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = b.add_var();
                    x[i * n + j] = v;
                    x[j * n + i] = v;
                }
            }
            x
        });
        Self { n, z, x }
    }

    fn z(&self, i: usize, j: usize) -> usize {
        self.z[i * self.n + j]
    }

    fn x(&self, i: usize, j: usize) -> Option<usize> {
        self.x
            .as_ref()
            .and_then(|x| (i != j).then(|| x[i * self.n + j]))
    }
}

fn partition_model(
    g: &Graph,
    k: usize,
    equal: bool,
    vector: bool,
) -> Result<ModelProgram, RelaxError> {
    check_parts(g, k, equal)?;
    let n = g.n();
    let mut b = ProgramBuilder::new(0);
    let v = PartVars::new(n, &mut b, vector);
    // ½⟨L,Z⟩ = ½ Σ d_i Z_ii − Σ_{ij ∈ E} Z_ij
    let sign = if equal { 1.0 } else { -1.0 };
    for i in 0..n {
        b.objective(v.z(i, i), sign * 0.5 * g.degree(i) as f64);
    }
    for &(i, j) in g.edges() {
        b.objective(v.z(i, j), -sign);
    }
    let mut eq: Vec<Affine> = (0..n).map(|i| Affine::var(v.z(i, i)).plus(-1.0)).collect();
    if equal {
        let target = (n / k) as f64;
        eq.extend(
            (0..n).map(|i| (0..n).fold(Affine::constant(-target), |e, j| e.add(v.z(i, j), 1.0))),
        );
    }
    b.zero(eq);
    let mut rows: Vec<Affine> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rows.push(Affine::var(v.z(i, j)));
            if let Some(x) = v.x(i, j) {
                rows.push(Affine::var(x));
            }
        }
    }
    b.nonneg(rows);
    let inv_k = 1.0 / k as f64;
    if vector {
        let km1 = (k - 1) as f64;
        b.psd(n, |i, j| Affine::var(v.z(i, j)).add_opt(v.x(i, j), -1.0));
        b.psd(n, |i, j| {
            Affine::var(v.z(i, j)).add_opt(v.x(i, j), km1).plus(-1.0)
        });
    } else {
        b.psd(n, |i, j| Affine::var(v.z(i, j)).plus(-inv_k));
    }
    let p = b.build();
    Ok(if equal {
        ModelProgram::minimize(p, k)
    } else {
        ModelProgram::maximize(p, None, k)
    })
}

/// `max ½⟨L,Z⟩  s.t.  Z_ii = 1, Z ≥ 0, Z − J/k ⪰ 0`.
pub fn build_maxkcut_m(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    partition_model(g, k, false, false)
}

/// `min ½⟨L,Z⟩  s.t.  Z_ii = 1, Z ≥ 0, Z − J/k ⪰ 0, Z e = (n/k) e`.
pub fn build_equipartition_m(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    partition_model(g, k, true, false)
}

/// Color-reduced vector lifting for max-k-cut over `(Z, X)`.
pub fn build_maxkcut_v(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    partition_model(g, k, false, true)
}

/// Color-reduced vector lifting for k-equipartition over `(Z, X)`.
pub fn build_equipartition_v(g: &Graph, k: usize) -> Result<ModelProgram, RelaxError> {
    partition_model(g, k, true, true)
}

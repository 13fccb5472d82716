use super::cones::ConeSpec;
use super::sparse::CscMatrix;

const MIN_SCALE: f64 = 1e-4;
const MAX_SCALE: f64 = 1e4;

/// Diagonal equilibration `Ā = diag(e) A diag(d)`, `c̄ = γ diag(d) c`.
#[derive(Debug, Clone)]
pub(crate) struct Scaling {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub gamma: f64,
}

impl Scaling {
    pub(crate) fn identity(n: usize, m: usize) -> Self {
        Self {
            d: vec![1.0; n],
            e: vec![1.0; m],
            gamma: 1.0,
        }
    }

    /// Ruiz sweeps on `a` in place; scaling of coupled cone blocks stays uniform.
    pub(crate) fn ruiz(a: &mut CscMatrix, c: &[f64], cones: &ConeSpec, sweeps: usize) -> Self {
        let (m, n) = (a.nrows, a.ncols);
        let mut s = Self::identity(n, m);
        for _ in 0..sweeps {
            let cn = a.col_norms();
            let mut rn = a.row_norms();
            for (off, cone) in cones.offsets() {
                if cone.is_coupled() {
                    let block = &mut rn[off..off + cone.dim()];
                    let mx = block.iter().fold(0.0f64, |x, v| x.max(*v));
                    block.fill(mx);
                }
            }
            let dd: Vec<f64> = cn
                .iter()
                .zip(&s.d)
                .map(|(&v, &acc)| factor(v, acc))
                .collect();
            let ee: Vec<f64> = rn
                .iter()
                .zip(&s.e)
                .map(|(&v, &acc)| factor(v, acc))
                .collect();
            a.scale(&ee, &dd);
            let mut worst = 0.0f64;
            for (x, f) in s.d.iter_mut().zip(&dd) {
                *x *= f;
                worst = worst.max((1.0 - f).abs());
            }
            for (x, f) in s.e.iter_mut().zip(&ee) {
                *x *= f;
                worst = worst.max((1.0 - f).abs());
            }
            if worst < 1e-3 {
                break;
            }
        }
        let cmax = c
            .iter()
            .zip(&s.d)
            .fold(0.0f64, |mx, (ci, di)| mx.max((ci * di).abs()));
        s.gamma = if cmax > 0.0 {
            (1.0 / cmax).clamp(MIN_SCALE, MAX_SCALE)
        } else {
            1.0
        };
        s
    }
}

/// Sweep factor keeping the accumulated scale inside `[MIN_SCALE, MAX_SCALE]`.
fn factor(norm: f64, acc: f64) -> f64 {
    if norm < 1e-12 {
        return 1.0;
    }
    (acc / norm.sqrt()).clamp(MIN_SCALE, MAX_SCALE) / acc
}

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};

/// Type-II Anderson acceleration of a fixed-point map `u ↦ f(u)` with
/// residual `g = f(u) − u`. Columns hold consecutive differences of `g` and
/// `f`; the oldest column is overwritten once `mem` are stored.
#[derive(Debug, Clone)]
pub(crate) struct Anderson {
    mem: usize,
    dg: Vec<Vec<f64>>,
    df: Vec<Vec<f64>>,
    /// `gram[r][c] = dg[r] · dg[c]`.
    gram: Vec<Vec<f64>>,
    len: usize,
    next: usize,
    prev_f: Vec<f64>,
    prev_g: Vec<f64>,
    has_prev: bool,
}

/// Extrapolation weights above this norm are discarded.
const MAX_WEIGHT_NORM: f64 = 1e6;
const REGULARIZATION: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Anderson {
    pub(crate) fn new(mem: usize, dim: usize) -> Self {
        Self {
            mem,
            dg: vec![vec![0.0; dim]; mem],
            df: vec![vec![0.0; dim]; mem],
            gram: vec![vec![0.0; mem]; mem],
            len: 0,
            next: 0,
            prev_f: vec![0.0; dim],
            prev_g: vec![0.0; dim],
            has_prev: false,
        }
    }

    pub(crate) fn reset(&mut self) {
        self.len = 0;
        self.next = 0;
        self.has_prev = false;
    }

    /// Records `(f, g)` and writes the extrapolated point into `out`.
    /// Returns `false` (leaving `out` untouched) when no step is available.
    pub(crate) fn step(&mut self, f: &[f64], g: &[f64], out: &mut [f64]) -> bool {
        if self.has_prev {
            let slot = self.next;
            for (d, (a, b)) in self.dg[slot].iter_mut().zip(g.iter().zip(&self.prev_g)) {
                *d = a - b;
            }
            for (d, (a, b)) in self.df[slot].iter_mut().zip(f.iter().zip(&self.prev_f)) {
                *d = a - b;
            }
            self.len = (self.len + 1).min(self.mem);
            for c in 0..self.len {
                let v = dot(&self.dg[slot], &self.dg[c]);
                self.gram[slot][c] = v;
                self.gram[c][slot] = v;
            }
            self.next = (slot + 1) % self.mem;
        }
        self.prev_f.copy_from_slice(f);
        self.prev_g.copy_from_slice(g);
        self.has_prev = true;

        let j = self.len;
        if j == 0 {
            return false;
        }
        let trace: f64 = (0..j).map(|r| self.gram[r][r]).sum();
        if !(trace > 0.0) || !trace.is_finite() {
            self.reset();
            return false;
        }
        let gram = Mat::<f64>::from_fn(j, j, |r, c| {
            self.gram[r][c] + if r == c { REGULARIZATION * trace } else { 0.0 }
        });
        let rhs = Mat::<f64>::from_fn(j, 1, |r, _| dot(&self.dg[r], g));
        let Ok(llt) = gram.llt(Side::Lower) else {
            self.reset();
            return false;
        };
        let gamma = llt.solve(&rhs);
        let norm = (0..j).map(|r| gamma[(r, 0)].powi(2)).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > MAX_WEIGHT_NORM {
            self.reset();
            return false;
        }
        out.copy_from_slice(f);
        for r in 0..j {
            let w = gamma[(r, 0)];
            for (o, d) in out.iter_mut().zip(&self.df[r]) {
                *o -= w * d;
            }
        }
        true
    }
}

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::cones::{Cone, ConeSpec};
use super::sparse::CscMatrix;
use super::SolveError;

/// `min cᵀx  s.t.  A x + s = b,  s ∈ K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicProgram {
    pub c: Vec<f64>,
    pub a: CscMatrix,
    pub b: Vec<f64>,
    pub cones: ConeSpec,
}

impl ConicProgram {
    pub fn nvars(&self) -> usize {
        self.c.len()
    }

    pub fn nslack(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let (m, n) = (self.b.len(), self.c.len());
        if self.a.nrows != m || self.a.ncols != n || self.cones.dim() != m {
            return Err(SolveError::Dimension(format!(
                "A is {}x{}, b has {m}, c has {n}, cones span {}",
                self.a.nrows,
                self.a.ncols,
                self.cones.dim()
            )));
        }
        if self.a.nzval.iter().any(|v| *v == 0.0 || !v.is_finite())
            || self.b.iter().chain(&self.c).any(|v| !v.is_finite())
        {
            return Err(SolveError::Dimension(
                "explicit zero or non-finite data".into(),
            ));
        }
        Ok(())
    }

    /// Appends a `NonNeg` block given as affine expressions.
    pub fn append_nonneg(&mut self, rows: &[Affine]) {
        let mut extra = ProgramBuilder::new(self.nvars());
        extra.nonneg(rows.iter().cloned());
        let (a, b) = extra.constraint_data();
        self.a = self.a.vstack(&a);
        self.b.extend(b);
        self.cones.blocks.push(Cone::NonNeg(rows.len()));
    }

    /// JSON form of `(A, b, c, cones)` for cross-checking with other solvers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("program serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Affine expression `constant + Σ coef · x_var`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Affine {
    pub constant: f64,
    pub terms: Vec<(usize, f64)>,
}

impl Affine {
    pub fn constant(c: f64) -> Self {
        Self {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn var(v: usize) -> Self {
        Self::term(v, 1.0)
    }

    pub fn term(v: usize, coef: f64) -> Self {
        Self {
            constant: 0.0,
            terms: vec![(v, coef)],
        }
    }

    pub fn add(mut self, v: usize, coef: f64) -> Self {
        self.terms.push((v, coef));
        self
    }

    pub fn add_opt(self, v: Option<usize>, coef: f64) -> Self {
        match v {
            Some(v) => self.add(v, coef),
            None => self,
        }
    }

    pub fn plus(mut self, c: f64) -> Self {
        self.constant += c;
        self
    }

    pub fn scaled(mut self, f: f64) -> Self {
        self.constant *= f;
        self.terms.iter_mut().for_each(|t| t.1 *= f);
        self
    }

    pub fn extend(mut self, other: &Affine) -> Self {
        self.constant += other.constant;
        self.terms.extend_from_slice(&other.terms);
        self
    }

    /// Value at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.constant + self.terms.iter().map(|&(v, c)| c * x[v]).sum::<f64>()
    }
}

/// Incremental assembly of a [`ConicProgram`]; each slack entry is an affine
/// function of the variables that must lie in its block's cone.
#[derive(Debug, Clone)]
pub struct ProgramBuilder {
    c: Vec<f64>,
    trip: Vec<(usize, usize, f64)>,
    b: Vec<f64>,
    blocks: Vec<Cone>,
}

impl ProgramBuilder {
    pub fn new(nvars: usize) -> Self {
        Self {
            c: vec![0.0; nvars],
            trip: Vec::new(),
            b: Vec::new(),
            blocks: Vec::new(),
        }
    }

    pub fn add_var(&mut self) -> usize {
        self.c.push(0.0);
        self.c.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.c.len()
    }

    /// Adds `coef` to the objective coefficient of `v` (minimization).
    pub fn objective(&mut self, v: usize, coef: f64) {
        self.c[v] += coef;
    }

    fn push_row(&mut self, e: &Affine) {
        let r = self.b.len();
        for &(v, coef) in &e.terms {
            assert!(v < self.c.len(), "variable {v} not declared");
            if coef != 0.0 {
                self.trip.push((r, v, -coef));
            }
        }
        self.b.push(e.constant);
    }

    fn push_block<I: IntoIterator<Item = Affine>>(&mut self, rows: I, make: fn(usize) -> Cone) {
        let start = self.b.len();
        for e in rows {
            self.push_row(&e);
        }
        let m = self.b.len() - start;
        if m > 0 {
            self.blocks.push(make(m));
        }
    }

    pub fn zero<I: IntoIterator<Item = Affine>>(&mut self, rows: I) {
        self.push_block(rows, Cone::Zero);
    }

    pub fn nonneg<I: IntoIterator<Item = Affine>>(&mut self, rows: I) {
        self.push_block(rows, Cone::NonNeg);
    }

    /// One second-order cone block `(t, z)` with `t >= ‖z‖`.
    pub fn soc(&mut self, rows: Vec<Affine>) {
        let m = rows.len();
        for e in &rows {
            self.push_row(e);
        }
        self.blocks.push(Cone::SecondOrder(m));
    }

    /// `M ⪰ 0` for the symmetric affine matrix with lower entries `entry(i, j)`, `i >= j`.
    pub fn psd<F: FnMut(usize, usize) -> Affine>(&mut self, order: usize, mut entry: F) {
        for j in 0..order {
            for i in j..order {
                let e = entry(i, j);
                if i == j {
                    self.push_row(&e);
                } else {
                    self.push_row(&e.scaled(SQRT_2));
                }
            }
        }
        self.blocks.push(Cone::Psd(order));
        debug_assert_eq!(
            self.blocks.iter().map(Cone::dim).sum::<usize>(),
            self.b.len()
        );
    }

    fn constraint_data(&self) -> (CscMatrix, Vec<f64>) {
        (
            CscMatrix::from_triplets(self.b.len(), self.c.len(), &self.trip),
            self.b.clone(),
        )
    }

    pub fn build(self) -> ConicProgram {
        let (a, b) = self.constraint_data();
        ConicProgram {
            c: self.c,
            a,
            b,
            cones: ConeSpec::new(self.blocks),
        }
    }
}

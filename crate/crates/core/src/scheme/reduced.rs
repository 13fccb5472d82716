use std::fmt;
use std::str::FromStr;

use faer::Mat;
use serde::{Deserialize, Serialize};

use super::{SchemeError, SchemeSpec};
use crate::conic::{solve, Affine, ConicProgram, ProgramBuilder, SolveOptions, SolveResult};
use crate::relax::ReducedPoint;

/// Bound models collapsed onto the Bose–Mesner algebra of a scheme:
/// `Z = Σ z_i B_i` and `X = Σ x_i B_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedModel {
    ThetaRed,
    ThetaPrimeRed,
    Theta3Red,
    Theta2Red,
    Theta1Red,
}

impl ReducedModel {
    pub const ALL: [ReducedModel; 5] = [
        ReducedModel::ThetaRed,
        ReducedModel::ThetaPrimeRed,
        ReducedModel::Theta3Red,
        ReducedModel::Theta2Red,
        ReducedModel::Theta1Red,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ReducedModel::ThetaRed => "theta_red",
            ReducedModel::ThetaPrimeRed => "theta_prime_red",
            ReducedModel::Theta3Red => "theta3_red",
            ReducedModel::Theta2Red => "theta2_red",
            ReducedModel::Theta1Red => "theta1_red",
        }
    }

    /// Name of the general-graph model with the same value.
    pub fn full_name(&self) -> &'static str {
        match self {
            ReducedModel::ThetaRed => "theta",
            ReducedModel::ThetaPrimeRed => "theta_prime",
            ReducedModel::Theta3Red => "theta3",
            ReducedModel::Theta2Red => "theta2",
            ReducedModel::Theta1Red => "theta1",
        }
    }

    fn theta_type(&self) -> bool {
        matches!(self, ReducedModel::ThetaRed | ReducedModel::ThetaPrimeRed)
    }
}

impl fmt::Display for ReducedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReducedModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReducedModel::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown reduced model '{s}'"))
    }
}

/// Collapsed program. Model value is `offset − cᵀx`.
#[derive(Debug, Clone)]
pub struct ReducedProgram {
    pub program: ConicProgram,
    pub offset: f64,
    pub model: ReducedModel,
    pub k: usize,
    /// Variable of `z_i`, `None` when fixed to `z_fixed[i]`.
    z_var: Vec<Option<usize>>,
    z_fixed: Vec<f64>,
    x_var: Vec<Option<usize>>,
}

impl ReducedProgram {
    fn z_expr(&self, i: usize) -> Affine {
        match self.z_var[i] {
            Some(v) => Affine::var(v),
            None => Affine::constant(self.z_fixed[i]),
        }
    }

    fn x_expr(&self, i: usize) -> Affine {
        Affine::default().add_opt(self.x_var[i], 1.0)
    }

    /// `(z, x)` at primal point `sol`; `x` is `None` for models without it.
    pub fn certificate(&self, sol: &[f64]) -> (Vec<f64>, Option<Vec<f64>>) {
        let z = (0..self.z_var.len())
            .map(|i| self.z_expr(i).eval(sol))
            .collect();
        let x = self.x_var.iter().any(Option::is_some).then(|| {
            (0..self.x_var.len())
                .map(|i| self.x_expr(i).eval(sol))
                .collect()
        });
        (z, x)
    }
}

/// `Σ_i coef_i e_i` over class expressions.
fn combo(exprs: &[Affine], coef: impl Fn(usize) -> f64) -> Affine {
    let mut out = Affine::default();
    for (i, e) in exprs.iter().enumerate() {
        let c = coef(i);
        if c != 0.0 {
            out = out.extend(&e.clone().scaled(c));
        }
    }
    out
}

/// `a ≥ c·t²` as the second-order cone `‖(a − 1, 2√c·t)‖ ≤ a + 1`.
fn quadratic_row(b: &mut ProgramBuilder, a: Affine, t: Affine, c: f64) {
    b.soc(vec![
        a.clone().plus(1.0),
        a.plus(-1.0),
        t.scaled(2.0 * c.sqrt()),
    ]);
}

/// Builds the collapsed program of `model` for `k` colors.
pub fn build_reduced(
    spec: &SchemeSpec,
    model: ReducedModel,
    k: usize,
) -> Result<ReducedProgram, SchemeError> {
    let n = spec.n_f64();
    if k < 1 || (model.theta_type() && k as u128 > spec.n) {
        return Err(SchemeError::KOutOfRange { k, n: spec.n });
    }
    let d = spec.degree();
    let p = spec.p_f64();
    let kv = spec.valencies_f64();
    let kf = k as f64;
    let mut b = ProgramBuilder::new(0);

    let mut z_var = vec![None; d + 1];
    let mut z_fixed = vec![0.0; d + 1];
    for i in 0..=d {
        if i == 0 && model.theta_type() {
            z_fixed[0] = kf / n;
        } else if !spec.is_edge_class(i) {
            z_var[i] = Some(b.add_var());
        }
    }
    let with_x = matches!(model, ReducedModel::Theta2Red | ReducedModel::Theta1Red) && k > 1;
    let mut x_var = vec![None; d + 1];
    if with_x {
        for slot in x_var.iter_mut().skip(1) {
            *slot = Some(b.add_var());
        }
    }
    let mut rp = ReducedProgram {
        program: ProgramBuilder::new(0).build(),
        offset: 0.0,
        model,
        k,
        z_var,
        z_fixed,
        x_var,
    };
    let z: Vec<Affine> = (0..=d).map(|i| rp.z_expr(i)).collect();
    let x: Vec<Affine> = (0..=d).map(|i| rp.x_expr(i)).collect();
    // eigenvalue of Σ e_i B_i on eigenspace j
    let eig = |e: &[Affine], j: usize| combo(e, |i| p[i][j]);

    let mut rows: Vec<Affine> = Vec::new();
    if model.theta_type() {
        // ⟨J, Z⟩ = n Σ_i z_i k_i with z_0 = k/n
        rp.offset = kf;
        for i in 1..=d {
            if let Some(v) = rp.z_var[i] {
                b.objective(v, -n * kv[i]);
            }
        }
        for j in 0..=d {
            let lam = eig(&z, j);
            rows.push(lam.clone());
            rows.push(lam.scaled(-1.0).plus(1.0));
        }
        if model == ReducedModel::ThetaPrimeRed {
            rows.extend(rp.z_var.iter().flatten().map(|&v| Affine::var(v)));
        }
        b.nonneg(rows);
    } else {
        let z0 = rp.z_var[0].expect("z_0 is free");
        b.objective(z0, -n);
        rows.push(Affine::term(z0, -1.0).plus(1.0));
        rows.extend(rp.z_var.iter().flatten().map(|&v| Affine::var(v)));
        rows.extend(rp.x_var.iter().flatten().map(|&v| Affine::var(v)));
        let lifted: Vec<Affine> = if with_x {
            z.iter()
                .zip(&x)
                .map(|(zi, xi)| zi.clone().extend(&xi.clone().scaled(kf - 1.0)))
                .collect()
        } else {
            z.clone()
        };
        if with_x {
            let diff: Vec<Affine> = z
                .iter()
                .zip(&x)
                .map(|(zi, xi)| zi.clone().extend(&xi.clone().scaled(-1.0)))
                .collect();
            rows.extend((0..=d).map(|j| eig(&diff, j)));
        }
        rows.extend((1..=d).map(|j| eig(&lifted, j)));
        if model == ReducedModel::Theta1Red {
            for i in 1..=d {
                rows.push(lifted[i].clone().add(z0, -2.0).plus(1.0));
            }
        }
        b.nonneg(rows);
        // eigenspace 0 of the lifted block minus the rank-one term n·z_0²
        let c = if model == ReducedModel::Theta3Red {
            1.0 / kf
        } else {
            1.0
        };
        quadratic_row(&mut b, eig(&lifted, 0).scaled(1.0 / n), Affine::var(z0), c);
    }
    rp.program = b.build();
    Ok(rp)
}

/// Optimum of a collapsed program with its certificate.
#[derive(Debug, Clone)]
pub struct ReducedBound {
    pub model: ReducedModel,
    pub k: usize,
    pub value: f64,
    /// `z_0..z_d`, fixed entries included.
    pub z: Vec<f64>,
    /// `x_0..x_d` for the vector-lifting models with `k > 1`.
    pub x: Option<Vec<f64>>,
    pub result: SolveResult,
}

impl ReducedBound {
    /// Expands the certificate to `Z = Σ z_i B_i`, `X = Σ x_i B_i`.
    pub fn lift(&self, spec: &SchemeSpec) -> Result<ReducedPoint, SchemeError> {
        let cls = spec.class_matrix()?;
        let n = spec.n as usize;
        let z = Mat::from_fn(n, n, |a, c| self.z[cls[a * n + c] as usize]);
        let x = Mat::from_fn(n, n, |a, c| {
            self.x.as_ref().map_or(0.0, |x| x[cls[a * n + c] as usize])
        });
        Ok(ReducedPoint { z, x, k: self.k })
    }
}

/// Solves the collapsed program of `model`.
pub fn reduced_bound(
    spec: &SchemeSpec,
    model: ReducedModel,
    k: usize,
    opts: &SolveOptions,
) -> Result<ReducedBound, SchemeError> {
    let rp = build_reduced(spec, model, k)?;
    let r = solve(&rp.program, opts)?;
    let (z, x) = rp.certificate(&r.x);
    Ok(ReducedBound {
        model,
        k,
        value: rp.offset - r.objective,
        z,
        x,
        result: r,
    })
}

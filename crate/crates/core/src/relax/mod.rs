//! Upper-bound models for the maximum k-colorable subgraph problem on
//! general graphs, the cutting-plane driver, and full liftings used as
//! reference oracles.

mod bqp;
mod full;
mod layout;
mod lifting;
mod partition;
mod theta;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conic::{solve, ConicProgram, SolveError, SolveOptions, SolveResult};
use crate::graph::Graph;

pub use bqp::{
    separate_bqp, solve_theta1_bqp, BqpCut, BqpOptions, BqpOutcome, CutFamily, CutRound, CUT_EPS,
};
pub use full::{
    build_matrix_lifting_full, build_theta_prime_product, build_vector_lifting_full,
    MATRIX_LIFT_CAP, VECTOR_LIFT_CAP,
};
pub use layout::{ReducedLayout, ReducedPoint};
pub use lifting::{build_theta1, build_theta2, build_theta3, build_vector_reduced, PairFamilies};
pub use partition::{
    build_equipartition_m, build_equipartition_v, build_maxkcut_m, build_maxkcut_v,
};
pub use theta::{build_theta_k, build_theta_prime_k, fan_minimized, fan_upper_bound};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum RelaxError {
    #[error("k = {k} is out of range for a graph on {n} vertices")]
    KOutOfRange { k: usize, n: usize },
    #[error("model size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("k = {k} does not divide n = {n}")]
    Divisibility { n: usize, k: usize },
    #[error("eigendecomposition failed: {0}")]
    Eigen(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<(), RelaxError> {
    if k < 1 || n == 0 {
        Err(RelaxError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// A conic program plus the affine map from its objective to the model value.
#[derive(Debug, Clone)]
pub struct ModelProgram {
    pub program: ConicProgram,
    /// Model value is `sign · cᵀx`.
    pub sign: f64,
    pub layout: Option<ReducedLayout>,
    pub k: usize,
}

impl ModelProgram {
    pub(crate) fn maximize(program: ConicProgram, layout: Option<ReducedLayout>, k: usize) -> Self {
        Self {
            program,
            sign: -1.0,
            layout,
            k,
        }
    }

    pub(crate) fn minimize(program: ConicProgram, k: usize) -> Self {
        Self {
            program,
            sign: 1.0,
            layout: None,
            k,
        }
    }

    /// Model value of a solve.
    pub fn value(&self, r: &SolveResult) -> f64 {
        self.sign * r.objective
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<(f64, SolveResult), RelaxError> {
        let r = solve(&self.program, opts)?;
        Ok((self.value(&r), r))
    }
}

/// Every bound model on general graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundModel {
    ThetaK,
    ThetaPrimeK,
    Theta3,
    Theta2,
    Theta1,
    Theta1Bqp,
    FanEigenvalue,
    VectorLiftFull,
    MatrixLiftFull,
    ThetaPrimeProduct,
    MaxKCutM,
    EquipartitionM,
}

impl BoundModel {
    pub const ALL: [BoundModel; 12] = [
        BoundModel::ThetaK,
        BoundModel::ThetaPrimeK,
        BoundModel::Theta3,
        BoundModel::Theta2,
        BoundModel::Theta1,
        BoundModel::Theta1Bqp,
        BoundModel::FanEigenvalue,
        BoundModel::VectorLiftFull,
        BoundModel::MatrixLiftFull,
        BoundModel::ThetaPrimeProduct,
        BoundModel::MaxKCutM,
        BoundModel::EquipartitionM,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundModel::ThetaK => "theta",
            BoundModel::ThetaPrimeK => "theta_prime",
            BoundModel::Theta3 => "theta3",
            BoundModel::Theta2 => "theta2",
            BoundModel::Theta1 => "theta1",
            BoundModel::Theta1Bqp => "theta1_bqp",
            BoundModel::FanEigenvalue => "fan",
            BoundModel::VectorLiftFull => "vector_lift",
            BoundModel::MatrixLiftFull => "matrix_lift",
            BoundModel::ThetaPrimeProduct => "theta_prime_product",
            BoundModel::MaxKCutM => "maxkcut",
            BoundModel::EquipartitionM => "equipartition",
        }
    }

    /// Whether the value upper-bounds the maximum k-colorable subgraph.
    pub fn bounds_alpha_k(&self) -> bool {
        !matches!(self, BoundModel::MaxKCutM | BoundModel::EquipartitionM)
    }

    /// Builds the conic program (`None` for models evaluated directly).
    pub fn build(&self, g: &Graph, k: usize) -> Result<Option<ModelProgram>, RelaxError> {
        Ok(Some(match self {
            BoundModel::ThetaK => build_theta_k(g, k)?,
            BoundModel::ThetaPrimeK => build_theta_prime_k(g, k)?,
            BoundModel::Theta3 => build_theta3(g, k)?,
            BoundModel::Theta2 => build_theta2(g, k)?,
            BoundModel::Theta1 | BoundModel::Theta1Bqp => build_theta1(g, k)?,
            BoundModel::VectorLiftFull => build_vector_lifting_full(g, k, true)?,
            BoundModel::MatrixLiftFull => build_matrix_lifting_full(g, k)?,
            BoundModel::ThetaPrimeProduct => build_theta_prime_product(g, k)?,
            BoundModel::MaxKCutM => build_maxkcut_m(g, k)?,
            BoundModel::EquipartitionM => build_equipartition_m(g, k)?,
            BoundModel::FanEigenvalue => return Ok(None),
        }))
    }
}

impl fmt::Display for BoundModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundModel::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown model '{s}'"))
    }
}

/// Value of a bound model together with solver diagnostics.
#[derive(Debug, Clone)]
pub struct BoundOutcome {
    pub value: f64,
    /// `None` for models evaluated without the conic solver.
    pub result: Option<SolveResult>,
    pub cut_rounds: Option<Vec<CutRound>>,
}

impl BoundOutcome {
    pub fn iterations(&self) -> usize {
        let base = self.result.as_ref().map_or(0, |r| r.iterations);
        match &self.cut_rounds {
            Some(rounds) => rounds.iter().map(|r| r.iterations).sum(),
            None => base,
        }
    }

    pub fn solve_time(&self) -> f64 {
        match (&self.cut_rounds, &self.result) {
            (Some(rounds), _) => rounds.iter().map(|r| r.solve_time).sum(),
            (None, Some(r)) => r.solve_time,
            (None, None) => 0.0,
        }
    }
}

/// Evaluates `model` on `(g, k)`. The eigenvalue bound is minimized over the
/// edge value on `[-n, 1]`.
pub fn compute_bound(
    g: &Graph,
    k: usize,
    model: BoundModel,
    opts: &SolveOptions,
    bqp: &BqpOptions,
) -> Result<BoundOutcome, RelaxError> {
    match model {
        BoundModel::FanEigenvalue => {
            let (_, v) = fan_minimized(g, k, -(g.n() as f64), 1.0)?;
            Ok(BoundOutcome {
                value: v,
                result: None,
                cut_rounds: None,
            })
        }
        BoundModel::Theta1Bqp => {
            let out = solve_theta1_bqp(g, k, bqp, opts)?;
            Ok(BoundOutcome {
                value: out.bound,
                result: Some(out.result),
                cut_rounds: Some(out.rounds),
            })
        }
        _ => {
            let m = model.build(g, k)?.expect("conic model");
            let (value, r) = m.solve(opts)?;
            Ok(BoundOutcome {
                value,
                result: Some(r),
                cut_rounds: None,
            })
        }
    }
}

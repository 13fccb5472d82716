//! First-order conic solver for products of zero, nonnegative,
//! second-order and positive-semidefinite cones.
//!
//! Problems take the form `min cᵀx  s.t.  A x + s = b,  s ∈ K`. A `Psd(s)`
//! block stores the lower triangle column by column with off-diagonal
//! entries multiplied by √2, so the Euclidean inner product of two slack
//! blocks equals the trace inner product of the matrices. The reported dual
//! `y` lies in the dual cone and satisfies `Aᵀy + c ≈ 0`.

mod admm;
mod anderson;
mod chol;
mod cones;
mod program;
mod scaling;
mod sparse;

use std::time::Duration;

use faer::Mat;
use serde::{Deserialize, Serialize};

pub use cones::{
    project_cone, project_dual_in_place, smat, svec, svec_index, svec_len, Cone, ConeSpec,
};
pub use program::{Affine, ConicProgram, ProgramBuilder};
pub use sparse::CscMatrix;

/// Default tolerance up to this PSD order.
pub const SMALL_PSD_ORDER: usize = 150;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("block {0} is out of range or not a PSD block")]
    NotPsdBlock(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    MaxIter,
    Infeasible,
    Unbounded,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::MaxIter => "max_iter",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
        }
    }
}

/// Relative residuals: primal `‖Ax+s−b‖∞/(1+‖b‖∞)`, dual
/// `‖Aᵀy+c‖∞/(1+‖c‖∞)`, gap `|cᵀx+bᵀy|/(1+|cᵀx|+|bᵀy|)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub primal: f64,
    pub dual: f64,
    pub gap: f64,
}

/// Starting point in the original (unscaled) variables. Shorter vectors are
/// padded with zeros.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WarmStart {
    pub x: Vec<f64>,
    pub s: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// `None` selects the default for the program's largest PSD block.
    pub eps: Option<f64>,
    pub max_iter: usize,
    pub scaling: bool,
    pub rho: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub adaptive_rho: bool,
    /// Penalty changes only when the balancing factor exceeds this ratio.
    pub adapt_factor: f64,
    pub adapt_min_interval: usize,
    pub check_every: usize,
    /// Anderson acceleration memory; `0` disables it.
    pub anderson_mem: usize,
    pub time_limit: Option<Duration>,
    pub warm_start: Option<WarmStart>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            eps: None,
            max_iter: 200_000,
            scaling: true,
            rho: 1.0,
            sigma: 1e-6,
            alpha: 1.5,
            adaptive_rho: true,
            adapt_factor: 5.0,
            adapt_min_interval: 50,
            check_every: 25,
            anderson_mem: 10,
            time_limit: None,
            warm_start: None,
        }
    }
}

impl SolveOptions {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Primal objective `cᵀx`.
    pub objective: f64,
    /// Dual objective `−bᵀy`.
    pub dual_objective: f64,
    pub x: Vec<f64>,
    pub s: Vec<f64>,
    pub y: Vec<f64>,
    pub residuals: Residuals,
    pub iterations: usize,
    /// Wall time in seconds.
    pub solve_time: f64,
    pub final_rho: f64,
    pub cones: ConeSpec,
}

impl SolveResult {
    pub fn warm_start(&self) -> WarmStart {
        WarmStart {
            x: self.x.clone(),
            s: self.s.clone(),
            y: self.y.clone(),
        }
    }
}

/// `1e-6` up to PSD order [`SMALL_PSD_ORDER`], `1e-5` above.
pub fn default_eps(cones: &ConeSpec) -> f64 {
    if cones.max_psd_order() <= SMALL_PSD_ORDER {
        1e-6
    } else {
        1e-5
    }
}

/// Solves the program. Failing to reach tolerance yields `MaxIter`, not an error.
pub fn solve(p: &ConicProgram, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    admm::solve(p, opts)
}

/// Symmetric matrix held in slack block `block` of a result.
pub fn extract_psd_block(result: &SolveResult, block: usize) -> Result<Mat<f64>, SolveError> {
    let (off, cone) = result
        .cones
        .offsets()
        .nth(block)
        .ok_or(SolveError::NotPsdBlock(block))?;
    match cone {
        Cone::Psd(s) => Ok(smat(&result.s[off..off + svec_len(s)], s)),
        _ => Err(SolveError::NotPsdBlock(block)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions::default().with_eps(1e-8)
    }

    #[test]
    fn scalar_lp() {
        // min x  s.t.  x − 1 ≥ 0
        let mut b = ProgramBuilder::new(1);
        b.objective(0, 1.0);
        b.nonneg([Affine::var(0).plus(-1.0)]);
        let r = solve(&b.build(), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.objective - 1.0).abs() < 1e-6);
    }

    #[test]
    fn theta_of_two_isolated_vertices() {
        // max z00 + 2 z10 + z11  s.t.  z00 + z11 = 1,  Z ⪰ 0
        let mut b = ProgramBuilder::new(3);
        for (v, c) in [(0, -1.0), (1, -2.0), (2, -1.0)] {
            b.objective(v, c);
        }
        b.zero([Affine::var(0).add(2, 1.0).plus(-1.0)]);
        b.psd(2, |i, j| match (i, j) {
            (0, 0) => Affine::var(0),
            (1, 0) => Affine::var(1),
            _ => Affine::var(2),
        });
        let r = solve(&b.build(), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((-r.objective - 2.0).abs() < 1e-6, "{}", r.objective);
    }

    #[test]
    fn norm_via_soc() {
        // min t  s.t.  (t, 3, 4) ∈ SOC
        let mut b = ProgramBuilder::new(1);
        b.objective(0, 1.0);
        b.soc(vec![
            Affine::var(0),
            Affine::constant(3.0),
            Affine::constant(4.0),
        ]);
        let r = solve(&b.build(), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.objective - 5.0).abs() < 1e-6);
    }

    #[test]
    fn detects_primal_infeasibility() {
        // x ≥ 1 and x ≤ 0
        let mut b = ProgramBuilder::new(1);
        b.nonneg([Affine::var(0).plus(-1.0), Affine::term(0, -1.0)]);
        let r = solve(&b.build(), &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // min −x  s.t.  x ≥ 0
        let mut b = ProgramBuilder::new(1);
        b.objective(0, -1.0);
        b.nonneg([Affine::var(0)]);
        let r = solve(&b.build(), &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Unbounded);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut p = ProgramBuilder::new(1).build();
        p.b.push(1.0);
        assert!(matches!(
            solve(&p, &SolveOptions::default()),
            Err(SolveError::Dimension(_))
        ));
    }

    #[test]
    fn extract_block_examples() {
        let r = SolveResult {
            status: SolveStatus::Optimal,
            objective: 0.0,
            dual_objective: 0.0,
            x: vec![],
            s: vec![1.0, 0.0, 2.0, std::f64::consts::SQRT_2 * 0.5, 1.0],
            y: vec![],
            residuals: Residuals::default(),
            iterations: 0,
            solve_time: 0.0,
            final_rho: 1.0,
            cones: ConeSpec::new(vec![Cone::NonNeg(2), Cone::Psd(2)]),
        };
        let m = extract_psd_block(&r, 1).unwrap();
        assert_eq!(m[(0, 0)], 2.0);
        assert!((m[(0, 1)] - 0.5).abs() < 1e-15);
        assert!(extract_psd_block(&r, 0).is_err());
        assert!(extract_psd_block(&r, 2).is_err());
    }
}

//! Chromatic-number lower bounds: `Ψ(G) = 1 + max{k : α_k(G) upper bound < n}`
//! from any upper-bound model, and closed-form bounds for Kneser graphs.

use serde::{Deserialize, Serialize};

use crate::conic::SolveOptions;
use crate::graph::{binomial_u128, Graph};
use crate::heur::{exact_alpha_k_with, ExactCaps};
use crate::relax::{compute_bound, BoundModel, BqpOptions};
use crate::scheme::{reduced_bound, ReducedModel, SchemeSpec};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ChromError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// Model failure at `k`; `trace` holds the steps completed before it.
    #[error("model failed at k = {k}: {message}")]
    Model {
        k: usize,
        message: String,
        trace: Vec<PsiStep>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Bound at most `n − margin`: not k-colorable.
    Below,
    /// Bound at least `n`.
    AtLeast,
    /// Bound inside `(n − margin, n)`; treated as [`Verdict::AtLeast`].
    Inconclusive,
}

impl Verdict {
    pub fn classify(bound: f64, n: usize, margin: f64) -> Self {
        let n = n as f64;
        if bound <= n - margin {
            Verdict::Below
        } else if bound >= n {
            Verdict::AtLeast
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Below => "< n",
            Verdict::AtLeast => ">= n",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiStep {
    pub k: usize,
    pub bound: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiResult {
    pub psi: usize,
    /// Steps for `k = 1, 2, …` up to the first non-[`Verdict::Below`] one.
    pub trace: Vec<PsiStep>,
    pub model: String,
}

/// Noise guard on the `< n` test: `max(0.01, 10·eps·n)`.
pub fn default_margin(eps: f64, n: usize) -> f64 {
    (10.0 * eps * n as f64).max(0.01)
}

/// Escalates `k = 1..=k_max` until the bound `bound(k)` on `α_k` is no
/// longer below `n − margin`.
pub fn psi_from_bounds<F, E>(
    n: usize,
    model: &str,
    k_max: usize,
    margin: f64,
    mut bound: F,
) -> Result<PsiResult, ChromError>
where
    F: FnMut(usize) -> Result<f64, E>,
    E: std::fmt::Display,
{
    if k_max < 1 {
        return Err(ChromError::InvalidParameters(
            "k_max must be at least 1".into(),
        ));
    }
    if !(margin >= 0.0) {
        return Err(ChromError::InvalidParameters(format!(
            "margin {margin} is negative"
        )));
    }
    let mut trace = Vec::new();
    for k in 1..=k_max {
        let b = bound(k).map_err(|e| ChromError::Model {
            k,
            message: e.to_string(),
            trace: trace.clone(),
        })?;
        let verdict = Verdict::classify(b, n, margin);
        trace.push(PsiStep {
            k,
            bound: b,
            verdict,
        });
        if verdict != Verdict::Below {
            break;
        }
    }
    let below = trace.iter().filter(|s| s.verdict == Verdict::Below).count();
    Ok(PsiResult {
        psi: below + 1,
        trace,
        model: model.to_string(),
    })
}

/// Ψ from a general-graph bound model. Values of `k >= n` are not evaluated:
/// `α_k = n` there.
pub fn psi_lower_bound(
    g: &Graph,
    model: BoundModel,
    k_max: usize,
    margin: f64,
    opts: &SolveOptions,
    bqp: &BqpOptions,
) -> Result<PsiResult, ChromError> {
    if !model.bounds_alpha_k() {
        return Err(ChromError::InvalidParameters(format!(
            "{model} does not bound the k-colorable subgraph"
        )));
    }
    let n = g.n();
    psi_from_bounds(n, model.name(), k_max.min(n.max(1)), margin, |k| {
        if k >= n {
            return Ok(n as f64);
        }
        compute_bound(g, k, model, opts, bqp).map(|o| o.value)
    })
}

/// Ψ from a scheme-reduced model.
pub fn psi_reduced(
    spec: &SchemeSpec,
    model: ReducedModel,
    k_max: usize,
    margin: f64,
    opts: &SolveOptions,
) -> Result<PsiResult, ChromError> {
    let n = usize::try_from(spec.n)
        .map_err(|_| ChromError::InvalidParameters("vertex count exceeds usize".into()))?;
    psi_from_bounds(n, model.name(), k_max, margin, |k| {
        reduced_bound(spec, model, k, opts).map(|r| r.value)
    })
}

/// Ψ from exact `α_k`; equals `χ(G)` when `k_max >= χ(G)`.
pub fn psi_exact(g: &Graph, k_max: usize, caps: ExactCaps) -> Result<PsiResult, ChromError> {
    psi_from_bounds(g.n(), "exact", k_max, 0.5, |k| {
        exact_alpha_k_with(g, k, caps).map(|(v, _)| v as f64)
    })
}

/// `Σ_{i=1}^k C(v−i, d−1)`, a lower bound on `α_k(K(v, d))`.
pub fn kneser_alpha_lb(v: u32, d: u32, k: u32) -> Result<u128, ChromError> {
    if d < 1 || v < 2 * d || k < 1 {
        return Err(ChromError::InvalidParameters(format!(
            "need d >= 1, v >= 2d and k >= 1, got v={v} d={d} k={k}"
        )));
    }
    let mut total: u128 = 0;
    for i in 1..=k.min(v) {
        let term = binomial_u128((v - i) as u64, (d - 1) as u64)
            .ok_or_else(|| ChromError::InvalidParameters("binomial overflow".into()))?;
        total = total
            .checked_add(term)
            .ok_or_else(|| ChromError::InvalidParameters("sum overflow".into()))?;
    }
    Ok(total)
}

/// `C(v−1, d−1) + C(v−2, d−1)`, an upper bound on `α_2(K(v, d))` valid for
/// `v >= (3 + √5) d / 2`.
pub fn kneser_alpha2_ub(v: u32, d: u32) -> Result<u128, ChromError> {
    // 2v − 3d >= √5·d, checked in integers
    let lhs = 2 * v as i64 - 3 * d as i64;
    if d < 1 || lhs < 0 || lhs * lhs < 5 * (d as i64) * (d as i64) {
        return Err(ChromError::InvalidParameters(format!(
            "need v >= (3 + sqrt 5) d / 2, got v={v} d={d}"
        )));
    }
    let a = binomial_u128((v - 1) as u64, (d - 1) as u64);
    let b = binomial_u128((v - 2) as u64, (d - 1) as u64);
    match (a, b) {
        (Some(a), Some(b)) => a
            .checked_add(b)
            .ok_or_else(|| ChromError::InvalidParameters("sum overflow".into())),
        _ => Err(ChromError::InvalidParameters("binomial overflow".into())),
    }
}

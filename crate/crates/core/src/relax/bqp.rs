use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{build_theta1, ModelProgram, ReducedLayout, ReducedPoint, RelaxError};
use crate::conic::{solve, Affine, SolveOptions, SolveResult};
use crate::graph::Graph;

/// Default minimum violation for a cut to be returned.
pub const CUT_EPS: f64 = 1e-4;

/// Triangle families of reduced boolean-quadric inequalities.
///
/// `Pivot` (indices `p`, `i < j`, `p ∉ {i, j}`) bounds two entries sharing
/// the pivot: variants
/// `0: X_ip + X_jp ≤ Z_pp + X_ij` (k ≥ 3),
/// `1: Z_ip + Z_jp ≤ Z_pp + Z_ij`,
/// `2: X_ip + X_jp ≤ Z_pp + Z_ij`,
/// `3: X_ip + Z_jp ≤ Z_pp + X_ij`,
/// `4: Z_ip + X_jp ≤ Z_pp + X_ij`.
///
/// `Triple` (indices `i < j < p`) bounds the diagonal:
/// `Z_ii + Z_jj + Z_pp ≤ W_ij + W_ip + W_jp + k` where variant
/// `0` takes every `W = X` (k ≥ 3), `1` every `W = Z`, and `2`, `3`, `4`
/// place `Z` on exactly the pair `ij`, `jp`, `ip` respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CutFamily {
    Pivot,
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BqpCut {
    pub family: CutFamily,
    pub variant: u8,
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub violation: f64,
}

impl BqpCut {
    fn key(&self) -> (CutFamily, u8, usize, usize, usize) {
        (self.family, self.variant, self.i, self.j, self.p)
    }

    /// `(lhs terms, rhs terms, rhs constant)` as `(is_z, a, b)` entries.
    fn sides(&self, k: usize) -> (Vec<(bool, usize, usize)>, Vec<(bool, usize, usize)>, f64) {
        let (i, j, p) = (self.i, self.j, self.p);
        match self.family {
            CutFamily::Pivot => {
                let (a, b, c) = match self.variant {
                    0 => (false, false, false),
                    1 => (true, true, true),
                    2 => (false, false, true),
                    3 => (false, true, false),
                    _ => (true, false, false),
                };
                (
                    vec![(a, i, p), (b, j, p)],
                    vec![(true, p, p), (c, i, j)],
                    0.0,
                )
            }
            CutFamily::Triple => {
                let (wij, wjp, wip) = match self.variant {
                    0 => (false, false, false),
                    1 => (true, true, true),
                    2 => (true, false, false),
                    3 => (false, true, false),
                    _ => (false, false, true),
                };
                (
                    vec![(true, i, i), (true, j, j), (true, p, p)],
                    vec![(wij, i, j), (wip, i, p), (wjp, j, p)],
                    k as f64,
                )
            }
        }
    }

    /// `lhs − rhs` at the point.
    pub fn violation_at(&self, pt: &ReducedPoint) -> f64 {
        let (lhs, rhs, c) = self.sides(pt.k);
        let val = |&(is_z, a, b): &(bool, usize, usize)| {
            if is_z {
                pt.z[(a, b)]
            } else {
                pt.x[(a, b)]
            }
        };
        lhs.iter().map(val).sum::<f64>() - rhs.iter().map(val).sum::<f64>() - c
    }

    /// Slack row `rhs − lhs ≥ 0` over the model's variables.
    pub fn to_row(&self, lay: &ReducedLayout, k: usize) -> Affine {
        let (lhs, rhs, c) = self.sides(k);
        let var = |is_z: bool, a: usize, b: usize| if is_z { lay.z(a, b) } else { lay.x(a, b) };
        let mut e = Affine::constant(c);
        for &(z, a, b) in &rhs {
            e = e.add_opt(var(z, a, b), 1.0);
        }
        for &(z, a, b) in &lhs {
            e = e.add_opt(var(z, a, b), -1.0);
        }
        e
    }
}

fn order(a: &BqpCut, b: &BqpCut) -> Ordering {
    b.violation
        .total_cmp(&a.violation)
        .then_with(|| a.key().cmp(&b.key()))
}

/// The `max_cuts` most violated inequalities (violation above `cut_eps`),
/// ordered by decreasing violation and then by `(family, variant, i, j, p)`.
/// Variant 0 of each family is skipped for `k < 3`.
pub fn separate_bqp(pt: &ReducedPoint, max_cuts: usize, cut_eps: f64) -> Vec<BqpCut> {
    if max_cuts == 0 {
        return Vec::new();
    }
    let n = pt.n();
    let first = if pt.k >= 3 { 0 } else { 1 };
    let mut best: Vec<BqpCut> = Vec::new();
    let mut floor = cut_eps;
    let push = |c: BqpCut, best: &mut Vec<BqpCut>, floor: &mut f64| {
        if c.violation <= *floor {
            return;
        }
        best.push(c);
        if best.len() >= max_cuts.saturating_mul(2).saturating_add(64) {
            best.sort_by(order);
            best.truncate(max_cuts);
            *floor = best[max_cuts - 1].violation.max(cut_eps);
        }
    };
    let (z, x) = (&pt.z, &pt.x);
    for p in 0..n {
        let zpp = z[(p, p)];
        for i in 0..n {
            if i == p {
                continue;
            }
            let (zip, xip) = (z[(i, p)], x[(i, p)]);
            for j in i + 1..n {
                if j == p {
                    continue;
                }
                let (zjp, xjp, zij, xij) = (z[(j, p)], x[(j, p)], z[(i, j)], x[(i, j)]);
                let vals = [
                    xip + xjp - zpp - xij,
                    zip + zjp - zpp - zij,
                    xip + xjp - zpp - zij,
                    xip + zjp - zpp - xij,
                    zip + xjp - zpp - xij,
                ];
                for (var, &v) in vals.iter().enumerate().skip(first) {
                    if v > floor {
                        push(
                            BqpCut {
                                family: CutFamily::Pivot,
                                variant: var as u8,
                                i,
                                j,
                                p,
                                violation: v,
                            },
                            &mut best,
                            &mut floor,
                        );
                    }
                }
            }
        }
    }
    let k = pt.k as f64;
    for i in 0..n {
        for j in i + 1..n {
            for p in j + 1..n {
                let d = z[(i, i)] + z[(j, j)] + z[(p, p)] - k;
                let (zij, zip, zjp) = (z[(i, j)], z[(i, p)], z[(j, p)]);
                let (xij, xip, xjp) = (x[(i, j)], x[(i, p)], x[(j, p)]);
                let vals = [
                    d - xij - xip - xjp,
                    d - zij - zip - zjp,
                    d - zij - xip - xjp,
                    d - xij - xip - zjp,
                    d - xij - zip - xjp,
                ];
                for (var, &v) in vals.iter().enumerate().skip(first) {
                    if v > floor {
                        push(
                            BqpCut {
                                family: CutFamily::Triple,
                                variant: var as u8,
                                i,
                                j,
                                p,
                                violation: v,
                            },
                            &mut best,
                            &mut floor,
                        );
                    }
                }
            }
        }
    }
    best.sort_by(order);
    best.truncate(max_cuts);
    best
}

#[derive(Debug, Clone)]
pub struct BqpOptions {
    pub rounds: usize,
    /// `None` means `2 n`.
    pub max_cuts: Option<usize>,
    pub cut_eps: f64,
    /// Stop adding cuts once the bound is at most this value.
    pub stop_below: Option<f64>,
}

impl Default for BqpOptions {
    fn default() -> Self {
        Self {
            rounds: 4,
            max_cuts: None,
            cut_eps: CUT_EPS,
            stop_below: None,
        }
    }
}

/// One solve of the cutting-plane loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutRound {
    pub bound: f64,
    pub cuts_added: usize,
    pub iterations: usize,
    pub solve_time: f64,
}

#[derive(Debug, Clone)]
pub struct BqpOutcome {
    /// Smallest bound over all solves.
    pub bound: f64,
    pub result: SolveResult,
    pub rounds: Vec<CutRound>,
    pub cuts: Vec<BqpCut>,
}

/// θ¹ followed by up to `rounds` rounds of adding the most violated
/// reduced boolean-quadric cuts; cuts are never removed and every re-solve
/// is warm-started from the previous iterate.
pub fn solve_theta1_bqp(
    g: &Graph,
    k: usize,
    bqp: &BqpOptions,
    opts: &SolveOptions,
) -> Result<BqpOutcome, RelaxError> {
    let mut model: ModelProgram = build_theta1(g, k)?;
    let lay = model.layout.clone().expect("reduced layout");
    let max_cuts = bqp.max_cuts.unwrap_or(2 * g.n());
    let mut result = solve(&model.program, opts)?;
    let mut bound = model.value(&result);
    let mut rounds = vec![CutRound {
        bound,
        cuts_added: 0,
        iterations: result.iterations,
        solve_time: result.solve_time,
    }];
    let mut cuts = Vec::new();
    if k < 2 {
        return Ok(BqpOutcome {
            bound,
            result,
            rounds,
            cuts,
        });
    }
    for _ in 0..bqp.rounds {
        if bqp.stop_below.is_some_and(|t| bound <= t) {
            break;
        }
        let pt = lay.point(&result.x, k);
        let new = separate_bqp(&pt, max_cuts, bqp.cut_eps);
        if new.is_empty() {
            break;
        }
        let rows: Vec<Affine> = new.iter().map(|c| c.to_row(&lay, k)).collect();
        model.program.append_nonneg(&rows);
        let mut o = opts.clone();
        o.warm_start = Some(result.warm_start());
        result = solve(&model.program, &o)?;
        let value = model.value(&result);
        bound = bound.min(value);
        rounds.push(CutRound {
            bound: value,
            cuts_added: new.len(),
            iterations: result.iterations,
            solve_time: result.solve_time,
        });
        cuts.extend(new);
    }
    Ok(BqpOutcome {
        bound,
        result,
        rounds,
        cuts,
    })
}

use std::time::Instant;

use super::anderson::Anderson;
use super::chol::ReducedKkt;
use super::cones::{project_dual_in_place, project_in_place, Cone};
use super::scaling::Scaling;
use super::{ConicProgram, Residuals, SolveError, SolveOptions, SolveResult, SolveStatus};

const EQ_RHO_FACTOR: f64 = 1e3;
const RHO_MIN: f64 = 1e-6;
const RHO_MAX: f64 = 1e6;
const INF_EPS: f64 = 1e-7;
/// Accelerated steps must not grow the fixed-point residual beyond this factor.
const SAFEGUARD: f64 = 1.0;

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Operator splitting on the equilibrated problem. Internal dual `y` lies in
/// the polar cone; the reported dual is its negation.
pub(crate) fn solve(p: &ConicProgram, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    p.validate()?;
    let start = Instant::now();
    let (m, n) = (p.nslack(), p.nvars());
    let eps = opts.eps.unwrap_or_else(|| super::default_eps(&p.cones));

    let mut a = p.a.clone();
    let sc = if opts.scaling {
        Scaling::ruiz(&mut a, &p.c, &p.cones, 10)
    } else {
        Scaling::identity(n, m)
    };
    let at = a.transpose();
    let q: Vec<f64> = (0..n).map(|j| sc.gamma * sc.d[j] * p.c[j]).collect();
    let b: Vec<f64> = (0..m).map(|i| sc.e[i] * p.b[i]).collect();

    let mut weight = vec![1.0; m];
    for (off, cone) in p.cones.offsets() {
        if let Cone::Zero(len) = cone {
            weight[off..off + len].fill(EQ_RHO_FACTOR);
        }
    }
    let mut rho = opts.rho;
    let mut kkt = ReducedKkt::new(&at, n, &weight, opts.sigma, rho)?;

    let mut x = vec![0.0; n];
    let mut s = vec![0.0; m];
    let mut y = vec![0.0; m];
    if let Some(ws) = &opts.warm_start {
        for j in 0..n.min(ws.x.len()) {
            x[j] = ws.x[j] / sc.d[j];
        }
        for i in 0..m.min(ws.s.len()) {
            s[i] = ws.s[i] * sc.e[i];
        }
        for i in 0..m.min(ws.y.len()) {
            y[i] = -ws.y[i] * sc.gamma / sc.e[i];
        }
        project_in_place(&mut s, &p.cones);
    }

    let alpha = opts.alpha;
    let sigma = opts.sigma;
    let mut rhs = vec![0.0; n];
    let mut work_m = vec![0.0; m];
    let mut ax = vec![0.0; m];
    let mut aty = vec![0.0; n];
    let mut s_hat = vec![0.0; m];
    let mut y_prev = y.clone();
    let mut x_prev = x.clone();
    let mut last_rho_update = 0usize;

    let mut status = SolveStatus::MaxIter;
    let mut iter = 0usize;
    let mut res = Residuals::default();
    let check_every = opts.check_every.max(1);

    // fixed-point state u = (x, s, y/(ρW))
    let dim = n + 2 * m;
    let mut aa = (opts.anderson_mem > 0).then(|| Anderson::new(opts.anderson_mem, dim));
    let mut u_in = vec![0.0; dim];
    let mut u_out = vec![0.0; dim];
    let mut g = vec![0.0; dim];
    let mut u_acc = vec![0.0; dim];
    let mut u_safe = vec![0.0; dim];
    let mut g_ref = f64::INFINITY;
    let mut accelerated = false;

    while iter < opts.max_iter {
        iter += 1;
        if accelerated {
            unpack(&u_acc, rho, &weight, &mut x, &mut s, &mut y);
        }
        if aa.is_some() {
            pack(&x, &s, &y, rho, &weight, &mut u_in);
        }
        // rhs = σx − q + Aᵀ(R(b − s) + y)
        for i in 0..m {
            work_m[i] = rho * weight[i] * (b[i] - s[i]) + y[i];
        }
        at.mul(&work_m, &mut rhs);
        for j in 0..n {
            rhs[j] += sigma * x[j] - q[j];
        }
        kkt.solve_in_place(&mut rhs);
        // s̃ = b − A x̃
        a.mul(&rhs, &mut ax);
        for j in 0..n {
            x[j] = alpha * rhs[j] + (1.0 - alpha) * x[j];
        }
        for i in 0..m {
            let st = b[i] - ax[i];
            s_hat[i] = alpha * st + (1.0 - alpha) * s[i];
            work_m[i] = s_hat[i] + y[i] / (rho * weight[i]);
        }
        project_in_place(&mut work_m, &p.cones);
        for i in 0..m {
            y[i] += rho * weight[i] * (s_hat[i] - work_m[i]);
        }
        std::mem::swap(&mut s, &mut work_m);

        if let Some(aa) = aa.as_mut() {
            pack(&x, &s, &y, rho, &weight, &mut u_out);
            let mut gn = 0.0;
            for i in 0..dim {
                g[i] = u_out[i] - u_in[i];
                gn += g[i] * g[i];
            }
            let gn = gn.sqrt();
            if accelerated && gn > SAFEGUARD * g_ref {
                // reject: resume from the last plain iterate
                unpack(&u_safe, rho, &weight, &mut x, &mut s, &mut y);
                aa.reset();
                accelerated = false;
                continue;
            }
            accelerated = false;
            if aa.step(&u_out, &g, &mut u_acc) {
                std::mem::swap(&mut u_safe, &mut u_out);
                g_ref = gn;
                accelerated = true;
            }
        }

        let final_iter = iter == opts.max_iter;
        if !iter.is_multiple_of(check_every) && !final_iter {
            continue;
        }
        // residuals in the original scaling
        a.mul(&x, &mut ax);
        at.mul(&y, &mut aty);
        let mut rp = 0.0f64;
        for i in 0..m {
            rp = rp.max(((ax[i] + s[i] - b[i]) / sc.e[i]).abs());
        }
        let mut rd = 0.0f64;
        for j in 0..n {
            rd = rd.max(((q[j] - aty[j]) / (sc.gamma * sc.d[j])).abs());
        }
        let pobj = dot(&q, &x) / sc.gamma;
        let dobj = dot(&b, &y) / sc.gamma;
        res = Residuals {
            primal: rp / (1.0 + inf_norm(&p.b)),
            dual: rd / (1.0 + inf_norm(&p.c)),
            gap: (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs()),
        };
        if res.primal <= eps && res.dual <= eps && res.gap <= eps {
            status = SolveStatus::Optimal;
            break;
        }
        if let Some(st) = detect_infeasibility(&a, &at, &q, &b, &p.cones, &y, &y_prev, &x, &x_prev)
        {
            status = st;
            break;
        }
        y_prev.copy_from_slice(&y);
        x_prev.copy_from_slice(&x);
        if let Some(limit) = opts.time_limit {
            if start.elapsed() >= limit {
                break;
            }
        }
        if opts.adaptive_rho && iter - last_rho_update >= opts.adapt_min_interval {
            // balance primal against the dual residual; a gap above the dual
            // residual counts on the primal side
            let gap = if res.gap > res.dual { res.gap } else { 0.0 };
            let ratio = (res.primal.max(gap) / res.dual.max(1e-16)).sqrt();
            let new_rho = (rho * ratio).clamp(RHO_MIN, RHO_MAX);
            if new_rho > rho * opts.adapt_factor || new_rho < rho / opts.adapt_factor {
                rho = new_rho;
                kkt.refactor(rho)?;
                last_rho_update = iter;
                if let Some(aa) = aa.as_mut() {
                    aa.reset();
                }
                accelerated = false;
            }
        }
    }

    let xs: Vec<f64> = (0..n).map(|j| x[j] * sc.d[j]).collect();
    let ss: Vec<f64> = (0..m).map(|i| s[i] / sc.e[i]).collect();
    let ys: Vec<f64> = (0..m).map(|i| -y[i] * sc.e[i] / sc.gamma).collect();
    let objective = match status {
        SolveStatus::Infeasible => f64::INFINITY,
        SolveStatus::Unbounded => f64::NEG_INFINITY,
        _ => dot(&p.c, &xs),
    };
    let dual_objective = -dot(&p.b, &ys);
    Ok(SolveResult {
        status,
        objective,
        dual_objective,
        x: xs,
        s: ss,
        y: ys,
        residuals: res,
        iterations: iter,
        solve_time: start.elapsed().as_secs_f64(),
        final_rho: rho,
        cones: p.cones.clone(),
    })
}

fn pack(x: &[f64], s: &[f64], y: &[f64], rho: f64, weight: &[f64], u: &mut [f64]) {
    let (n, m) = (x.len(), s.len());
    u[..n].copy_from_slice(x);
    u[n..n + m].copy_from_slice(s);
    for i in 0..m {
        u[n + m + i] = y[i] / (rho * weight[i]);
    }
}

fn unpack(u: &[f64], rho: f64, weight: &[f64], x: &mut [f64], s: &mut [f64], y: &mut [f64]) {
    let (n, m) = (x.len(), s.len());
    x.copy_from_slice(&u[..n]);
    s.copy_from_slice(&u[n..n + m]);
    for i in 0..m {
        y[i] = u[n + m + i] * rho * weight[i];
    }
}

#[allow(clippy::too_many_arguments)]
fn detect_infeasibility(
    a: &super::CscMatrix,
    at: &super::CscMatrix,
    q: &[f64],
    b: &[f64],
    cones: &super::ConeSpec,
    y: &[f64],
    y_prev: &[f64],
    x: &[f64],
    x_prev: &[f64],
) -> Option<SolveStatus> {
    // primal certificate: δ ∈ K*, Aᵀδ = 0, bᵀδ < 0 with δ = −Δy
    let dy: Vec<f64> = y.iter().zip(y_prev).map(|(a, b)| b - a).collect();
    let ny = inf_norm(&dy);
    if ny > 1e-10 && dot(b, &dy) < -INF_EPS * ny {
        let mut t = vec![0.0; q.len()];
        at.mul(&dy, &mut t);
        if inf_norm(&t) <= INF_EPS * ny {
            let mut proj = dy.clone();
            project_dual_in_place(&mut proj, cones);
            let dist = proj
                .iter()
                .zip(&dy)
                .fold(0.0f64, |m, (p, d)| m.max((p - d).abs()));
            if dist <= INF_EPS * ny {
                return Some(SolveStatus::Infeasible);
            }
        }
    }
    // dual certificate: −AΔx ∈ K, cᵀΔx < 0
    let dx: Vec<f64> = x.iter().zip(x_prev).map(|(a, b)| a - b).collect();
    let nx = inf_norm(&dx);
    if nx > 1e-10 && dot(q, &dx) < -INF_EPS * nx {
        let mut adx = vec![0.0; b.len()];
        a.mul(&dx, &mut adx);
        adx.iter_mut().for_each(|v| *v = -*v);
        let mut proj = adx.clone();
        project_in_place(&mut proj, cones);
        let dist = proj
            .iter()
            .zip(&adx)
            .fold(0.0f64, |m, (p, d)| m.max((p - d).abs()));
        if dist <= INF_EPS * nx {
            return Some(SolveStatus::Unbounded);
        }
    }
    None
}

use faer::{Mat, Side};
use mkcs::conic::{
    project_cone, smat, solve, svec, svec_len, Affine, Cone, ConeSpec, ProgramBuilder,
    SolveOptions, SolveStatus,
};
use mkcs::graph::gnp;
use mkcs::relax::{build_theta1, build_theta3, build_theta_prime_k};
use proptest::prelude::*;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One block of each kind, sizes small enough for exhaustive checks.
fn cone_of(kind: u8, size: usize) -> Cone {
    match kind {
        0 => Cone::Zero(size),
        1 => Cone::NonNeg(size),
        2 => Cone::SecondOrder(size + 1),
        _ => Cone::Psd(size),
    }
}

fn vector_for(cone: Cone) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, cone.dim())
}

fn cone_and_vector() -> impl Strategy<Value = (Cone, Vec<f64>)> {
    (0u8..4, 1usize..6)
        .prop_map(|(kind, size)| cone_of(kind, size))
        .prop_flat_map(|c| (Just(c), vector_for(c)))
}

/// `project_cone` output lies in the cone (checked independently).
fn in_cone(v: &[f64], cone: Cone, tol: f64) -> bool {
    match cone {
        Cone::Zero(_) => v.iter().all(|x| x.abs() <= tol),
        Cone::NonNeg(_) => v.iter().all(|&x| x >= -tol),
        Cone::SecondOrder(_) => norm(&v[1..]) <= v[0] + tol,
        Cone::Psd(s) => {
            let m = smat(v, s);
            let vals = m.self_adjoint_eigenvalues(Side::Lower).unwrap();
            vals.iter().all(|&l| l >= -tol)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent((cone, v) in cone_and_vector()) {
        let spec = ConeSpec::new(vec![cone]);
        let p = project_cone(&v, &spec);
        let pp = project_cone(&p, &spec);
        prop_assert!(dist(&p, &pp) <= 1e-10 * (1.0 + norm(&v)), "{cone:?}");
        prop_assert!(in_cone(&p, cone, 1e-9 * (1.0 + norm(&v))));
    }

    #[test]
    fn projection_is_nearest_point(
        (cone, v, ws) in cone_and_vector().prop_flat_map(|(c, v)| {
            (Just(c), Just(v), prop::collection::vec(vector_for(c), 100))
        })
    ) {
        let spec = ConeSpec::new(vec![cone]);
        let p = project_cone(&v, &spec);
        let d = dist(&v, &p);
        for w in ws {
            // projecting maps an arbitrary vector to a feasible one
            let w = project_cone(&w, &spec);
            prop_assert!(d <= dist(&v, &w) + 1e-9);
        }
    }

    /// Self-dual cones: `v = P(v) − P(−v)` with the two parts orthogonal.
    #[test]
    fn moreau_decomposition(
        (cone, v) in (2u8..4, 1usize..6)
            .prop_map(|(kind, size)| cone_of(kind, size))
            .prop_flat_map(|c| (Just(c), vector_for(c)))
    ) {
        let spec = ConeSpec::new(vec![cone]);
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        let p = project_cone(&v, &spec);
        let q = project_cone(&neg, &spec);
        for i in 0..v.len() {
            prop_assert!((v[i] - (p[i] - q[i])).abs() <= 1e-10 * (1.0 + norm(&v)));
        }
        prop_assert!(dot(&p, &q).abs() <= 1e-9 * (1.0 + norm(&v).powi(2)));
    }

    #[test]
    fn svec_round_trip(s in 1usize..7, vals in prop::collection::vec(-3.0..3.0f64, 21)) {
        let m = Mat::from_fn(s, s, |i, j| vals[i.max(j) * (i.max(j) + 1) / 2 + i.min(j)]);
        let v = svec(&m);
        prop_assert_eq!(v.len(), svec_len(s));
        let back = smat(&v, s);
        for i in 0..s {
            for j in 0..s {
                prop_assert!((back[(i, j)] - m[(i, j)]).abs() <= 1e-12);
            }
        }
        // inner products are preserved
        let tr: f64 = (0..s).flat_map(|i| (0..s).map(move |j| (i, j))).map(|(i, j)| m[(i, j)] * m[(i, j)]).sum();
        prop_assert!((dot(&v, &v) - tr).abs() <= 1e-9 * (1.0 + tr));
    }
}

#[test]
fn spec_projection_examples() {
    let p = project_cone(&[-1.0, 2.0], &ConeSpec::new(vec![Cone::NonNeg(2)]));
    assert_eq!(p, vec![0.0, 2.0]);

    let m = Mat::from_fn(2, 2, |i, j| if i == j { 0.0 } else { 1.0 });
    let p = smat(
        &project_cone(&svec(&m), &ConeSpec::new(vec![Cone::Psd(2)])),
        2,
    );
    for i in 0..2 {
        for j in 0..2 {
            assert!((p[(i, j)] - 0.5).abs() < 1e-12);
        }
    }

    let p = project_cone(
        &[-6.0, 3.0, 4.0],
        &ConeSpec::new(vec![Cone::SecondOrder(3)]),
    );
    assert!(p.iter().all(|x| x.abs() < 1e-15));
}

#[test]
fn equality_constrained_lp() {
    // min x  s.t.  x − s = 1,  s ≥ 0
    let mut b = ProgramBuilder::new(1);
    b.objective(0, 1.0);
    b.nonneg([Affine::var(0).plus(-1.0)]);
    let r = solve(&b.build(), &SolveOptions::default()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    assert!((r.objective - 1.0).abs() < 1e-5);
}

/// Residual definitions recomputed from the returned iterates.
fn check_optimal_certificate(p: &mkcs::conic::ConicProgram, opts: &SolveOptions) {
    let r = solve(p, opts).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    let eps = opts.eps.unwrap();
    let inf = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut ax = vec![0.0; p.nslack()];
    p.a.mul(&r.x, &mut ax);
    let rp: Vec<f64> = (0..p.nslack()).map(|i| ax[i] + r.s[i] - p.b[i]).collect();
    assert!(
        inf(&rp) / (1.0 + inf(&p.b)) <= eps * 1.0001,
        "primal {}",
        inf(&rp)
    );
    let mut aty = vec![0.0; p.nvars()];
    p.a.tmul(&r.y, &mut aty);
    let rd: Vec<f64> = (0..p.nvars()).map(|j| aty[j] + p.c[j]).collect();
    assert!(
        inf(&rd) / (1.0 + inf(&p.c)) <= eps * 1.0001,
        "dual {}",
        inf(&rd)
    );
    let cx = dot(&p.c, &r.x);
    let by = dot(&p.b, &r.y);
    assert!(
        (cx + by).abs() / (1.0 + cx.abs() + by.abs()) <= eps * 1.0001,
        "gap {cx} {by}"
    );
    let ps = project_cone(&r.s, &p.cones);
    assert!(dist(&ps, &r.s) <= 1e-8 * (1.0 + norm(&r.s)));
}

#[test]
fn optimal_results_meet_residual_definitions() {
    let opts = SolveOptions::default().with_eps(1e-6);
    for seed in 0..4 {
        let g = gnp(10, 0.4, seed);
        check_optimal_certificate(&build_theta_prime_k(&g, 2).unwrap().program, &opts);
        check_optimal_certificate(&build_theta3(&g, 2).unwrap().program, &opts);
        check_optimal_certificate(&build_theta1(&g, 3).unwrap().program, &opts);
    }
}

#[test]
fn solves_are_bit_identical() {
    let g = gnp(12, 0.3, 9);
    let p = build_theta1(&g, 2).unwrap().program;
    let opts = SolveOptions::default();
    let a = solve(&p, &opts).unwrap();
    let b = solve(&p, &opts).unwrap();
    assert_eq!(a.iterations, b.iterations);
    assert_eq!(a.x, b.x);
    assert_eq!(a.y, b.y);
    assert_eq!(a.s, b.s);
}

#[test]
fn program_json_round_trip() {
    let g = gnp(8, 0.5, 1);
    let p = build_theta3(&g, 2).unwrap().program;
    let back = mkcs::conic::ConicProgram::from_json(&p.to_json()).unwrap();
    assert_eq!(p, back);
}

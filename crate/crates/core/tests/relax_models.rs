use mkcs::conic::{solve, Affine, ProgramBuilder, SolveOptions, SolveStatus};
use mkcs::graph::{complete, cycle, gnp, hamming, petersen, Graph};
use mkcs::heur::exact_alpha_k;
use mkcs::relax::*;

fn tol(v: f64) -> f64 {
    1e-3 * (1.0 + v.abs())
}

fn opts() -> SolveOptions {
    SolveOptions::default().with_eps(1e-7)
}

fn value(m: Result<ModelProgram, RelaxError>) -> f64 {
    let (v, r) = m.unwrap().solve(&opts()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    v
}

fn assert_close(got: f64, want: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol(want),
        "{what}: got {got}, want {want}"
    );
}

#[test]
fn petersen_discriminates_theta1_from_theta2() {
    let g = petersen();
    assert_close(value(build_theta1(&g, 2)), 7.5, "theta1");
    assert_close(value(build_theta2(&g, 2)), 8.0, "theta2");
}

#[test]
fn edgeless_graphs_give_n() {
    let g = Graph::edgeless(6);
    for k in 1..=5 {
        assert_close(value(build_theta_k(&g, k)), 6.0, "theta");
        assert_close(value(build_theta_prime_k(&g, k)), 6.0, "theta_prime");
    }
    assert_close(value(build_theta3(&Graph::edgeless(5), 2)), 5.0, "theta3");
}

#[test]
fn complete_graph_theta_prime_is_one() {
    assert_close(
        value(build_theta_prime_k(&complete(3), 1)),
        1.0,
        "theta_prime",
    );
}

#[test]
fn theta3_at_k1_is_schrijver_number() {
    let g = petersen();
    let oracle = value(build_theta_prime_k(&g, 1));
    assert_close(oracle, 4.0, "theta_prime");
    assert_close(value(build_theta3(&g, 1)), oracle, "theta3");
}

#[test]
fn k_out_of_range_is_rejected() {
    let g = cycle(5);
    assert!(build_theta_k(&g, 0).is_err());
    assert!(build_theta_k(&g, 5).is_err());
    assert!(build_theta3(&g, 0).is_err());
    assert!(build_maxkcut_m(&g, 1).is_err());
    assert!(matches!(
        build_equipartition_m(&g, 2),
        Err(RelaxError::Divisibility { .. })
    ));
}

/// `max ⟨J,Z⟩  s.t.  Z_ij = 0 on edges, tr Z = 1, Z ⪰ 0, I − Z ⪰ 0`, written
/// out here with its own variable layout.
fn theta1_with_upper_block(g: &Graph) -> f64 {
    let n = g.n();
    let mut b = ProgramBuilder::new(0);
    let mut var = vec![None; n * n];
    for i in 0..n {
        for j in 0..=i {
            if i == j || !g.has_edge(i, j) {
                let v = b.add_var();
                var[i * n + j] = Some(v);
                var[j * n + i] = Some(v);
                b.objective(v, if i == j { -1.0 } else { -2.0 });
            }
        }
    }
    let entry = |i: usize, j: usize| var[i * n + j].map_or(Affine::constant(0.0), Affine::var);
    b.zero([(0..n).fold(Affine::constant(-1.0), |e, i| e.extend(&entry(i, i)))]);
    b.psd(n, entry);
    b.psd(n, |i, j| {
        let e = entry(i, j).scaled(-1.0);
        if i == j {
            e.plus(1.0)
        } else {
            e
        }
    });
    let r = solve(&b.build(), &opts()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    -r.objective
}

#[test]
fn theta_at_k1_omits_redundant_block() {
    let graphs = [cycle(5), petersen(), gnp(9, 0.4, 3), gnp(12, 0.3, 4)];
    for g in &graphs {
        let full = theta1_with_upper_block(g);
        let lean = value(build_theta_k(g, 1));
        assert_close(lean, full, "theta_1");
    }
    assert_close(value(build_theta_k(&cycle(5), 1)), 5f64.sqrt(), "theta(C5)");
}

#[test]
fn vector_lifting_full_examples() {
    let g = petersen();
    assert_close(
        value(build_vector_lifting_full(&g, 2, false)),
        8.0,
        "no rlt",
    );
    assert_close(value(build_vector_lifting_full(&g, 2, true)), 7.5, "rlt");
    assert_close(
        value(build_vector_lifting_full(&cycle(5), 1, true)),
        5f64.sqrt(),
        "C5",
    );
    assert!(matches!(
        build_vector_lifting_full(&gnp(21, 0.5, 0), 3, false),
        Err(RelaxError::TooLarge { .. })
    ));
}

#[test]
fn matrix_lifting_full_examples() {
    let g = petersen();
    assert_close(
        value(build_matrix_lifting_full(&g, 2)),
        value(build_theta3(&g, 2)),
        "petersen",
    );
    assert_close(
        value(build_matrix_lifting_full(&cycle(5), 1)),
        5f64.sqrt(),
        "C5",
    );
    let k4 = value(build_matrix_lifting_full(&complete(4), 2));
    let exact = exact_alpha_k(&complete(4), 2).unwrap().0 as f64;
    assert_eq!(exact, 2.0);
    assert!(k4 >= exact - tol(exact), "K4 value {k4}");
}

#[test]
fn product_theta_prime_examples() {
    assert_close(
        value(build_theta_prime_product(&petersen(), 2)),
        8.0,
        "petersen",
    );
    // K_2 □ K_2 is C_4
    assert_close(value(build_theta_prime_product(&complete(2), 2)), 2.0, "C4");
    assert_close(
        value(build_theta_prime_product(&Graph::edgeless(1), 3)),
        1.0,
        "K3",
    );
}

#[test]
fn fan_bound_examples() {
    assert!((fan_upper_bound(&Graph::edgeless(7), 1, -2.0).unwrap() - 7.0).abs() < 1e-9);
    assert!((fan_upper_bound(&complete(2), 1, 1.0).unwrap() - 2.0).abs() < 1e-9);
    let g = petersen();
    let grid_min = (0..=40)
        .map(|s| fan_upper_bound(&g, 1, -3.0 + 0.1 * s as f64).unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(grid_min >= 4.0 - 1e-6, "{grid_min}");
    let (_, best) = fan_minimized(&g, 1, -3.0, 1.0).unwrap();
    assert!(best <= grid_min + 1e-9 && best >= 4.0 - 1e-6);
}

#[test]
fn partition_examples() {
    assert_close(value(build_maxkcut_m(&complete(2), 2)), 1.0, "max-2-cut K2");
    assert_close(
        value(build_equipartition_m(&cycle(4), 2)),
        2.0,
        "2-equipartition C4",
    );
    assert!(value(build_maxkcut_m(&cycle(5), 2)) >= 4.0 - 1e-6);
}

#[test]
fn row_dominance_family_is_redundant_on_vertex_transitive_graphs() {
    let fam = PairFamilies {
        pair_upper: false,
        row_dominance: true,
    };
    for g in [petersen(), hamming(3, 2, 1).unwrap()] {
        for k in 2..=3 {
            let base = value(build_theta2(&g, k));
            let with = value(build_vector_reduced(&g, k, fam));
            assert_close(with, base, "theta2 + row dominance");
        }
    }
}

#[test]
fn bqp_separation_examples() {
    assert!(separate_bqp(&ReducedPoint::zeros(5, 3), 100, CUT_EPS).is_empty());

    let mut pt = ReducedPoint::zeros(4, 2);
    for i in 0..3 {
        pt.z[(i, i)] = 1.0;
    }
    let cuts = separate_bqp(&pt, 100, CUT_EPS);
    assert!(!cuts.is_empty());
    let top = cuts[0];
    assert_eq!(top.family, CutFamily::Triple);
    assert_eq!((top.i, top.j, top.p), (0, 1, 2));
    assert!((top.violation - 1.0).abs() < 1e-12);
    assert!(cuts.iter().all(|c| c.violation <= top.violation));
    assert!(separate_bqp(&pt, 0, CUT_EPS).is_empty());
}

/// All colorings of `n` vertices with colors `0..=k`.
fn colorings(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (k + 1).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = code % (k + 1);
                code /= k + 1;
                c
            })
            .collect()
    })
}

#[test]
fn every_cut_is_valid_for_all_colorings() {
    for n in 3..=5 {
        for k in 2..=3 {
            // a point violating many inequalities, every instance enumerated
            let mut pt = ReducedPoint::zeros(n, k);
            for i in 0..n {
                for j in 0..n {
                    pt.z[(i, j)] = if i == j {
                        1.0
                    } else {
                        ((i * 7 + j * 3) % 5) as f64 * 0.1
                    };
                    pt.x[(i, j)] = if i == j {
                        0.0
                    } else {
                        ((i * 5 + j * 11) % 7) as f64 * 0.1
                    };
                }
            }
            let cuts = separate_bqp(&pt, usize::MAX, f64::NEG_INFINITY);
            let per_triple = if k >= 3 { 5 } else { 4 };
            let triples = n * (n - 1) * (n - 2) / 6;
            assert_eq!(cuts.len(), per_triple * triples * 4, "n={n} k={k}");
            for color in colorings(n, k) {
                let p = ReducedPoint::from_coloring(&color, k);
                for c in &cuts {
                    assert!(c.violation_at(&p) <= 1e-12, "{c:?} violated by {color:?}");
                }
            }
        }
    }
}

#[test]
fn theta1_bqp_on_small_graph() {
    let g = mkcs::graph::insertions(1, 4).unwrap();
    let out = solve_theta1_bqp(&g, 3, &BqpOptions::default(), &SolveOptions::default()).unwrap();
    assert!((out.bound - 67.0).abs() <= 0.05, "{}", out.bound);
    assert!(out.rounds.len() <= 5);
}

#[test]
fn model_names_round_trip() {
    for m in BoundModel::ALL {
        assert_eq!(m.name().parse::<BoundModel>().unwrap(), m);
    }
    assert!("theta9".parse::<BoundModel>().is_err());
}

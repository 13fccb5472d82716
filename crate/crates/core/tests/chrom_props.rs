use mkcs::chrom::*;
use mkcs::conic::SolveOptions;
use mkcs::graph::{complete, cycle, gnp, petersen, Graph, GraphFamily};
use mkcs::heur::{exact_alpha_k, ExactCaps};
use mkcs::relax::{BoundModel, BqpOptions};
use mkcs::scheme::{ReducedModel, SchemeSpec};
use proptest::prelude::*;

/// Smallest `k <= 4` with `α_k = n`.
fn chromatic_number(g: &Graph) -> Option<usize> {
    (1..=4).find(|&k| exact_alpha_k(g, k).unwrap().0 == g.n())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn psi_never_exceeds_chromatic_number(
        (n, p, seed) in (4usize..=10, 0.1..0.6f64, any::<u64>())
    ) {
        let g = gnp(n, p, seed);
        let chi = chromatic_number(&g);
        prop_assume!(chi.is_some());
        let chi = chi.unwrap();
        let exact = psi_exact(&g, 4, ExactCaps::default()).unwrap();
        prop_assert_eq!(exact.psi, chi);
        let opts = SolveOptions::default();
        let margin = default_margin(1e-6, n);
        let t1 = psi_lower_bound(&g, BoundModel::Theta1, 4, margin, &opts, &BqpOptions::default()).unwrap();
        let t3 = psi_lower_bound(&g, BoundModel::Theta3, 4, margin, &opts, &BqpOptions::default()).unwrap();
        prop_assert!(t1.psi <= chi);
        prop_assert!(t3.psi <= t1.psi, "theta3 psi {} > theta1 psi {}", t3.psi, t1.psi);
        for r in [&exact, &t1, &t3] {
            let ks: Vec<usize> = r.trace.iter().map(|s| s.k).collect();
            prop_assert_eq!(ks, (1..=r.trace.len()).collect::<Vec<_>>());
            let below = r.trace.iter().filter(|s| s.verdict == Verdict::Below).count();
            prop_assert_eq!(r.psi, below + 1);
        }
    }
}

#[test]
fn complete_graph_exact_psi() {
    let r = psi_exact(&complete(3), 5, ExactCaps::default()).unwrap();
    assert_eq!(r.psi, 3);
    let verdicts: Vec<Verdict> = r.trace.iter().map(|s| s.verdict).collect();
    assert_eq!(
        verdicts,
        vec![Verdict::Below, Verdict::Below, Verdict::AtLeast]
    );
}

#[test]
fn petersen_and_odd_cycle_psi() {
    let opts = SolveOptions::default();
    let margin = default_margin(1e-6, 10);
    let r = psi_lower_bound(
        &petersen(),
        BoundModel::Theta1,
        5,
        margin,
        &opts,
        &BqpOptions::default(),
    )
    .unwrap();
    assert_eq!(r.psi, 3);
    let r = psi_lower_bound(
        &cycle(7),
        BoundModel::ThetaPrimeK,
        5,
        margin,
        &opts,
        &BqpOptions::default(),
    )
    .unwrap();
    assert_eq!(r.psi, 3);
}

#[test]
fn johnson_psi_from_reduced_theta1() {
    let spec = SchemeSpec::from_family(&GraphFamily::Johnson { v: 12, d: 7, q: 3 }).unwrap();
    let r = psi_reduced(
        &spec,
        ReducedModel::Theta1Red,
        10,
        default_margin(1e-6, 792),
        &SolveOptions::default(),
    )
    .unwrap();
    assert_eq!(r.psi, 7);
    assert!((r.trace[5].bound - 720.0).abs() <= 0.01);
    assert!((r.trace[6].bound - 792.0).abs() <= 0.01);
}

#[test]
fn kneser_sandwich() {
    let caps = ExactCaps {
        max_n: 21,
        max_k: 3,
    };
    for v in [6u32, 7] {
        let g = mkcs::graph::kneser(v, 2).unwrap();
        for k in 1..=3 {
            let exact = mkcs::heur::exact_alpha_k_with(&g, k, caps).unwrap().0 as u128;
            assert_eq!(kneser_alpha_lb(v, 2, k as u32).unwrap(), exact);
        }
    }
    assert_eq!(
        kneser_alpha_lb(10, 2, 2).unwrap(),
        kneser_alpha2_ub(10, 2).unwrap()
    );
    assert_eq!(kneser_alpha_lb(9, 4, 1).unwrap(), 56);
}

#[test]
fn invalid_parameters() {
    let opts = SolveOptions::default();
    assert!(psi_lower_bound(
        &petersen(),
        BoundModel::Theta1,
        0,
        0.01,
        &opts,
        &BqpOptions::default()
    )
    .is_err());
    assert!(psi_lower_bound(
        &petersen(),
        BoundModel::MaxKCutM,
        3,
        0.01,
        &opts,
        &BqpOptions::default()
    )
    .is_err());
}

use mkcs::chrom::kneser_alpha_lb;
use mkcs::graph::{cfat, complete, cycle, gnp, kneser, petersen, queen, Graph};
use mkcs::heur::*;
use proptest::prelude::*;

/// `α_k` by enumerating all `(k + 1)^n` assignments.
fn brute_force_alpha_k(g: &Graph, k: usize) -> usize {
    let n = g.n();
    let total = (k + 1).pow(n as u32);
    let mut color = vec![0usize; n];
    let mut best = 0;
    for mut code in 0..total {
        for c in color.iter_mut() {
            *c = code % (k + 1);
            code /= k + 1;
        }
        let proper = g
            .edges()
            .iter()
            .all(|&(i, j)| color[i] == 0 || color[i] != color[j]);
        if proper {
            best = best.max(color.iter().filter(|&&c| c != 0).count());
        }
    }
    best
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9, 0.0..0.8f64, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn exact_matches_enumeration(g in small_graph(), k in 1usize..=3) {
        let (v, w) = exact_alpha_k(&g, k).unwrap();
        prop_assert_eq!(v, brute_force_alpha_k(&g, k));
        prop_assert_eq!(w.value(), v);
        prop_assert!(w.is_proper(&g));
    }

    #[test]
    fn heuristics_are_proper_and_below_exact(g in small_graph(), k in 1usize..=3, seed in any::<u64>()) {
        let exact = exact_alpha_k(&g, k).unwrap().0;
        let greedy = greedy_coloring(&g, k);
        let params = TabuParams { rng_seed: seed, ..TabuParams::default() };
        let tabu = tabu_lb(&g, k, &params).unwrap();
        let prod = product_heuristic_lb(&g, k).unwrap();
        for a in [&greedy, &tabu, &prod] {
            prop_assert!(a.is_proper(&g));
            prop_assert!(a.value() <= exact);
        }
        prop_assert!(tabu.value() >= greedy.value());
        prop_assert_eq!(tabu_lb(&g, k, &params).unwrap(), tabu);
    }

    #[test]
    fn exact_is_monotone_in_k(g in small_graph()) {
        let vals: Vec<usize> = (1..=4).map(|k| exact_alpha_k(&g, k).unwrap().0).collect();
        prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
        prop_assert!(vals[3] <= g.n());
    }

    #[test]
    fn min_degree_set_is_maximal_stable(g in small_graph()) {
        let s = min_degree_stable_set(&g);
        for (a, &u) in s.iter().enumerate() {
            for &v in &s[a + 1..] {
                prop_assert!(!g.has_edge(u, v));
            }
        }
        for v in 0..g.n() {
            prop_assert!(s.contains(&v) || g.neighbors(v).iter().any(|u| s.contains(u)));
        }
    }
}

#[test]
fn exact_examples() {
    assert_eq!(exact_alpha_k(&cycle(5), 2).unwrap().0, 4);
    assert_eq!(exact_alpha_k(&complete(3), 3).unwrap().0, 3);
    assert_eq!(
        exact_alpha_k(&petersen(), 2).unwrap().0,
        brute_force_alpha_k(&petersen(), 2)
    );
    assert!(matches!(
        exact_alpha_k(&Graph::edgeless(21), 1),
        Err(HeurError::CapExceeded { .. })
    ));
}

#[test]
fn exact_matches_kneser_formula() {
    let caps = ExactCaps {
        max_n: 21,
        max_k: 4,
    };
    for v in [6u32, 7] {
        let g = kneser(v, 2).unwrap();
        for k in 1..=3u32 {
            let exact = exact_alpha_k_with(&g, k as usize, caps).unwrap().0;
            let formula = kneser_alpha_lb(v, 2, k).unwrap();
            assert_eq!(exact as u128, formula, "K({v},2) k={k}");
            let closed: u32 = (1..=k).map(|i| v - i).sum();
            assert_eq!(formula, closed as u128);
        }
    }
}

#[test]
fn stable_set_examples() {
    assert_eq!(min_degree_stable_set(&Graph::edgeless(4)).len(), 4);
    assert_eq!(min_degree_stable_set(&complete(5)).len(), 1);
    assert_eq!(min_degree_stable_set(&petersen()).len(), 4);
}

#[test]
fn product_heuristic_examples() {
    assert_eq!(product_heuristic_lb(&complete(2), 2).unwrap().value(), 2);
    assert_eq!(product_heuristic_lb(&petersen(), 1).unwrap().value(), 4);
    let c5 = product_heuristic_lb(&cycle(5), 2).unwrap().value();
    assert!((3..=4).contains(&c5), "{c5}");
    assert!(matches!(
        product_heuristic_lb(&Graph::edgeless(10_001), 2),
        Err(HeurError::CapExceeded { .. })
    ));
}

#[test]
fn tabu_reaches_benchmark_values() {
    let cf = cfat(200, 2.0).unwrap().complement();
    assert_eq!(tabu_lb(&cf, 2, &TabuParams::default()).unwrap().value(), 46);
    let q = queen(6, 6);
    assert!(tabu_lb(&q, 6, &TabuParams::default()).unwrap().value() >= 32);
}

#[test]
fn assignment_validation() {
    let g = cycle(4);
    assert!(ColorAssignment::new(&g, vec![1, 2, 1, 2], 2).is_ok());
    assert!(matches!(
        ColorAssignment::new(&g, vec![1, 1, 0, 0], 2),
        Err(HeurError::Improper { .. })
    ));
    assert!(matches!(
        ColorAssignment::new(&g, vec![3, 0, 0, 0], 2),
        Err(HeurError::ColorOutOfRange { .. })
    ));
    assert!(matches!(
        ColorAssignment::new(&g, vec![0; 3], 2),
        Err(HeurError::LengthMismatch { .. })
    ));
    let a = ColorAssignment::new(&g, vec![1, 2, 1, 0], 2).unwrap();
    assert_eq!(a.classes(), vec![vec![0, 2], vec![1]]);
}

use faer::Side;
use mkcs::graph::*;
use proptest::prelude::*;

fn round_trip(g: &Graph) -> Graph {
    parse_dimacs(write_dimacs(g).as_bytes()).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    binomial_u64(n, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dimacs_round_trip_random(n in 1usize..40, p in 0.0..1.0f64, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        prop_assert_eq!(round_trip(&g), g);
    }

    #[test]
    fn edge_set_is_canonical(n in 2usize..20, pairs in prop::collection::vec((0usize..20, 0usize..20), 0..60)) {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
        let g = Graph::from_edges(n, pairs.iter().copied()).unwrap();
        let rev = Graph::from_edges(n, pairs.iter().rev().map(|&(a, b)| (b, a))).unwrap();
        prop_assert_eq!(&g, &rev);
        prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(g.edges().iter().all(|&(i, j)| i < j && j < n));
    }

    #[test]
    fn complement_is_involution(n in 1usize..30, p in 0.0..1.0f64, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }
}

/// Every generator instance with at most 5000 vertices.
fn families() -> Vec<GraphFamily> {
    let mut out = Vec::new();
    for v in 2..=12u32 {
        for d in 1..=v {
            if binom(v as u64, d as u64) > 5000 {
                continue;
            }
            for q in 0..d {
                out.push(GraphFamily::Johnson { v, d, q });
            }
        }
    }
    for d in 1..=6u32 {
        for q in 2..=5u32 {
            if (q as u64).pow(d) > 5000 {
                continue;
            }
            for j in 1..=d {
                out.push(GraphFamily::Hamming { d, q, j });
                out.push(GraphFamily::HammingLe { d, q, j });
            }
        }
    }
    out.push(GraphFamily::Kneser { v: 7, d: 3 });
    out.push(GraphFamily::CompleteK { k: 9 });
    out
}

#[test]
fn generated_graphs_survive_dimacs() {
    for f in families() {
        let g = f.generate().unwrap();
        assert_eq!(round_trip(&g), g, "{f:?}");
    }
}

#[test]
fn edge_counts_follow_valency_formulas() {
    for f in families() {
        let g = f.generate().unwrap();
        let want = match f {
            GraphFamily::Johnson { v, d, q } => {
                let (v, d, q) = (v as u64, d as u64, q as u64);
                binom(v, d) * binom(d, q) * binom(v - d, d - q) / 2
            }
            GraphFamily::Hamming { d, q, j } => {
                let (q, j) = (q as u64, j);
                q.pow(d) * binom(d as u64, j as u64) * (q - 1).pow(j) / 2
            }
            GraphFamily::HammingLe { d, q, j } => {
                let q = q as u64;
                (1..=j)
                    .map(|i| q.pow(d) * binom(d as u64, i as u64) * (q - 1).pow(i) / 2)
                    .sum()
            }
            GraphFamily::Kneser { v, d } => {
                let (v, d) = (v as u64, d as u64);
                binom(v, d) * binom(v - d, d) / 2
            }
            GraphFamily::CompleteK { k } => (k as u64) * (k as u64 - 1) / 2,
            GraphFamily::File { .. } => unreachable!(),
        };
        assert_eq!(g.m() as u64, want, "{f:?}");
        assert_eq!(Some(g.n() as u128), f.vertex_count(), "{f:?}");
    }
}

#[test]
fn hamming_distance_one_is_iterated_product() {
    for q in 2..=3u32 {
        let mut prod = complete(q as usize);
        for d in 1..=3u32 {
            assert_eq!(hamming(d, q, 1).unwrap(), prod, "H({d},{q},1)");
            prod = prod.cartesian_product_complete(q as usize).unwrap();
        }
    }
}

fn spectrum(g: &Graph) -> Vec<f64> {
    let mut s = g
        .adjacency()
        .self_adjoint_eigenvalues(Side::Lower)
        .unwrap()
        .to_vec();
    s.sort_by(f64::total_cmp);
    s
}

#[test]
fn johnson_complement_parameterization() {
    let a = johnson(12, 7, 3).unwrap();
    let b = johnson(12, 5, 1).unwrap();
    assert_eq!((a.n(), a.m()), (792, 69_300));
    assert_eq!((b.n(), b.m()), (a.n(), a.m()));
    for (x, y) in spectrum(&a).iter().zip(spectrum(&b)) {
        assert!((x - y).abs() < 1e-8);
    }
}

#[test]
fn density_and_laplacian() {
    assert!((complete(3).density_percent().unwrap() - 100.0).abs() < 1e-12);
    assert!(Graph::edgeless(1).density_percent().is_err());
    let g = gnp(15, 0.4, 2);
    let l = g.laplacian();
    for i in 0..15 {
        let row: f64 = (0..15).map(|j| l[(i, j)]).sum();
        assert!(row.abs() < 1e-12);
        assert_eq!(l[(i, i)], g.degree(i) as f64);
    }
}

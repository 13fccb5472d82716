//! Constructions of named benchmark graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphBuilder, GraphError};

/// Petersen graph, i.e. `K(5, 2)` in lexicographic subset order.
pub fn petersen() -> Graph {
    super::kneser(5, 2).expect("valid parameters")
}

/// Graph on `n` vertices without edges.
pub fn empty(n: usize) -> Graph {
    Graph::edgeless(n)
}

/// Cycle `C_n` (`n >= 3`).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Path `P_n`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Erdős–Rényi `G(n, p)` from a seeded ChaCha stream.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                b.push_unchecked(i, j);
            }
        }
    }
    b.build()
}

/// Queen graph on an `rows x cols` board; square `(a, b)` has index `a * cols + b`.
pub fn queen(rows: usize, cols: usize) -> Graph {
    let mut b = GraphBuilder::new(rows * cols);
    for a in 0..rows {
        for c in 0..cols {
            for a2 in 0..rows {
                for c2 in 0..cols {
                    let (u, v) = (a * cols + c, a2 * cols + c2);
                    if u < v && (a == a2 || c == c2 || a.abs_diff(a2) == c.abs_diff(c2)) {
                        b.push_unchecked(u, v);
                    }
                }
            }
        }
    }
    b.build()
}

/// Generalized Mycielskian with `layers` copies: layer 0 is `g`, vertex
/// `(l, i)` sits at `l * n + i`, `(l, i) ~ (l - 1, j)` for every edge `ij`,
/// and the apex `layers * n + n` is joined to the last layer.
pub fn mycielski(g: &Graph, layers: usize) -> Graph {
    let n = g.n();
    let total = n * (layers + 1) + 1;
    let mut b = GraphBuilder::new(total);
    for &(i, j) in g.edges() {
        b.push_unchecked(i, j);
        for l in 1..=layers {
            b.push_unchecked(l * n + i, (l - 1) * n + j);
            b.push_unchecked(l * n + j, (l - 1) * n + i);
        }
    }
    for i in 0..n {
        b.push_unchecked(layers * n + i, total - 1);
    }
    b.build()
}

/// `mycielK` benchmark: the Mycielskian applied `k - 1` times to `K_2`.
pub fn mycielski_family(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidParameters("myciel needs k >= 2".into()));
    }
    let mut g = super::complete(2);
    for _ in 1..k {
        g = mycielski(&g, 1);
    }
    Ok(g)
}

/// `K-Insertions_I` benchmark: the generalized Mycielskian with `k + 1`
/// layers applied `i - 1` times to `K_2`.
pub fn insertions(k: usize, i: usize) -> Result<Graph, GraphError> {
    if k < 1 || i < 1 {
        return Err(GraphError::InvalidParameters(
            "insertions needs k >= 1 and i >= 1".into(),
        ));
    }
    let mut g = super::complete(2);
    for _ in 1..i {
        g = mycielski(&g, k + 1);
    }
    Ok(g)
}

/// `c-fat` graph: `p = floor(n / (c ln n))` contiguous parts (the first
/// `n mod p` one vertex larger); vertices adjacent iff their parts are
/// equal or cyclically consecutive.
pub fn cfat(n: usize, c: f64) -> Result<Graph, GraphError> {
    if n < 3 || c <= 0.0 {
        return Err(GraphError::InvalidParameters(
            "c-fat needs n >= 3 and c > 0".into(),
        ));
    }
    let p = ((n as f64) / (c * (n as f64).ln())).floor() as usize;
    if p < 3 {
        return Err(GraphError::InvalidParameters(format!(
            "c-fat({n}, {c}) has fewer than three parts"
        )));
    }
    let (base, extra) = (n / p, n % p);
    let mut part = Vec::with_capacity(n);
    for q in 0..p {
        let size = base + usize::from(q < extra);
        part.extend(std::iter::repeat_n(q, size));
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let gap = part[u].abs_diff(part[v]);
            if gap <= 1 || gap == p - 1 {
                b.push_unchecked(u, v);
            }
        }
    }
    Ok(b.build())
}

/// `kellerD` benchmark: the subgraph of the Keller graph on `{0..3}^d`
/// induced by the neighbours of the all-zero word. Two words are adjacent
/// iff they differ in at least two coordinates and some coordinate differs
/// by exactly 2 modulo 4.
pub fn keller(d: u32) -> Result<Graph, GraphError> {
    if !(2..=7).contains(&d) {
        return Err(GraphError::InvalidParameters(
            "keller needs 2 <= d <= 7".into(),
        ));
    }
    let words: Vec<Vec<u8>> = (0..4usize.pow(d))
        .map(|x| (0..d).map(|t| (x >> (2 * t) & 3) as u8).collect())
        .collect();
    let adjacent = |a: &[u8], b: &[u8]| {
        let diff = a.iter().zip(b).filter(|(x, y)| x != y).count();
        diff >= 2 && a.iter().zip(b).any(|(x, y)| (x + 4 - y) % 4 == 2)
    };
    let nbrs: Vec<usize> = (1..words.len())
        .filter(|&x| adjacent(&words[0], &words[x]))
        .collect();
    let mut b = GraphBuilder::new(nbrs.len());
    for (a, &u) in nbrs.iter().enumerate() {
        for (c, &v) in nbrs.iter().enumerate().skip(a + 1) {
            if adjacent(&words[u], &words[v]) {
                b.push_unchecked(a, c);
            }
        }
    }
    Ok(b.build())
}

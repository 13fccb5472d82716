use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, GraphError};

/// Largest vertex count any generator will materialize.
pub const MAX_GENERATED_VERTICES: usize = 20_000;

/// Parameterized description of a generated (or file-backed) graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    Kneser { v: u32, d: u32 },
    Johnson { v: u32, d: u32, q: u32 },
    Hamming { d: u32, q: u32, j: u32 },
    HammingLe { d: u32, q: u32, j: u32 },
    CompleteK { k: u32 },
    File { path: String },
}

impl GraphFamily {
    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            GraphFamily::Kneser { v, d } => check_johnson(v, d, 0),
            GraphFamily::Johnson { v, d, q } => check_johnson(v, d, q),
            GraphFamily::Hamming { d, q, j } | GraphFamily::HammingLe { d, q, j } => {
                check_hamming(d, q, j)
            }
            GraphFamily::CompleteK { k: 0 } => Err(GraphError::InvalidParameters(
                "complete graph needs k >= 1".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Vertex count without building the graph (`None` for file-backed).
    pub fn vertex_count(&self) -> Option<u128> {
        match *self {
            GraphFamily::Kneser { v, d } | GraphFamily::Johnson { v, d, .. } => {
                binomial_u128(v as u64, d as u64)
            }
            GraphFamily::Hamming { d, q, .. } | GraphFamily::HammingLe { d, q, .. } => {
                (q as u128).checked_pow(d)
            }
            GraphFamily::CompleteK { k } => Some(k as u128),
            GraphFamily::File { .. } => None,
        }
    }

    /// Materializes a generator instance. File-backed families are read by the caller.
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            GraphFamily::Kneser { v, d } => kneser(v, d),
            GraphFamily::Johnson { v, d, q } => johnson(v, d, q),
            GraphFamily::Hamming { d, q, j } => hamming(d, q, j),
            GraphFamily::HammingLe { d, q, j } => hamming_le(d, q, j),
            GraphFamily::CompleteK { k } => {
                self.validate()?;
                Ok(complete(k as usize))
            }
            GraphFamily::File { ref path } => Err(GraphError::InvalidParameters(format!(
                "file-backed family {path} has no generator"
            ))),
        }
    }
}

fn check_johnson(v: u32, d: u32, q: u32) -> Result<(), GraphError> {
    if d < 1 || d > v || q >= d {
        return Err(GraphError::InvalidParameters(format!(
            "johnson graph needs 1 <= d <= v and 0 <= q < d, got v={v} d={d} q={q}"
        )));
    }
    if v > 64 {
        return Err(GraphError::InvalidParameters(format!(
            "johnson graph ground set {v} exceeds 64"
        )));
    }
    Ok(())
}

fn check_hamming(d: u32, q: u32, j: u32) -> Result<(), GraphError> {
    if d < 1 || q < 2 || j < 1 || j > d {
        return Err(GraphError::InvalidParameters(format!(
            "hamming graph needs d >= 1, q >= 2, 1 <= j <= d, got d={d} q={q} j={j}"
        )));
    }
    Ok(())
}

fn check_size(n: Option<u128>) -> Result<usize, GraphError> {
    match n {
        Some(n) if n <= MAX_GENERATED_VERTICES as u128 => Ok(n as usize),
        Some(n) => Err(GraphError::TooLarge {
            n,
            cap: MAX_GENERATED_VERTICES,
        }),
        None => Err(GraphError::TooLarge {
            n: u128::MAX,
            cap: MAX_GENERATED_VERTICES,
        }),
    }
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, k)`, zero when `k > n`. Panics on overflow.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    let b = binomial_u128(n, k).expect("binomial overflow");
    u64::try_from(b).expect("binomial overflow")
}

/// Complete graph `K_k`.
pub fn complete(k: usize) -> Graph {
    let mut b = GraphBuilder::new(k);
    for i in 0..k {
        for j in i + 1..k {
            b.push_unchecked(i, j);
        }
    }
    b.build()
}

/// Kneser graph `K(v, d) = J(v, d, 0)`.
pub fn kneser(v: u32, d: u32) -> Result<Graph, GraphError> {
    johnson(v, d, 0)
}

/// All `d`-subsets of `{0..v}` as bitmasks in lexicographic order.
pub(crate) fn subsets_lex(v: u32, d: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<u32> = (0..d).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &e| m | 1 << e));
        let mut t = d as usize;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if idx[t] < v - d + t as u32 {
                break;
            }
            if t == 0 {
                return out;
            }
        }
        idx[t] += 1;
        for s in t + 1..d as usize {
            idx[s] = idx[s - 1] + 1;
        }
    }
}

/// Johnson graph `J(v, d, q)`: `d`-subsets of a `v`-set in lexicographic
/// order, adjacent iff they share exactly `q` elements.
pub fn johnson(v: u32, d: u32, q: u32) -> Result<Graph, GraphError> {
    check_johnson(v, d, q)?;
    let n = check_size(binomial_u128(v as u64, d as u64))?;
    let sets = subsets_lex(v, d);
    debug_assert_eq!(sets.len(), n);
    let mut b = GraphBuilder::new(n);
    for (a, &s) in sets.iter().enumerate() {
        for (c, &t) in sets.iter().enumerate().skip(a + 1) {
            if (s & t).count_ones() == q {
                b.push_unchecked(a, c);
            }
        }
    }
    Ok(b.build())
}

/// Base-`q` digits of `x`, most significant first.
pub(crate) fn digits(x: usize, d: u32, q: u32) -> Vec<u32> {
    let mut out = vec![0; d as usize];
    let mut x = x;
    for slot in out.iter_mut().rev() {
        *slot = (x % q as usize) as u32;
        x /= q as usize;
    }
    out
}

fn hamming_with(d: u32, q: u32, j: u32, exact: bool) -> Result<Graph, GraphError> {
    check_hamming(d, q, j)?;
    let n = check_size((q as u128).checked_pow(d))?;
    let words: Vec<Vec<u32>> = (0..n).map(|x| digits(x, d, q)).collect();
    let mut b = GraphBuilder::new(n);
    for x in 0..n {
        for y in x + 1..n {
            let dist = words[x]
                .iter()
                .zip(&words[y])
                .filter(|(a, b)| a != b)
                .count() as u32;
            if (exact && dist == j) || (!exact && dist <= j) {
                b.push_unchecked(x, y);
            }
        }
    }
    Ok(b.build())
}

/// Hamming graph `H(d, q, j)`: words of length `d` over `q` symbols
/// (index = base-`q` value, most significant digit first), adjacent iff
/// they differ in exactly `j` positions.
pub fn hamming(d: u32, q: u32, j: u32) -> Result<Graph, GraphError> {
    hamming_with(d, q, j, true)
}

/// `H^-(d, q, j)`: adjacent iff the Hamming distance lies in `1..=j`.
pub fn hamming_le(d: u32, q: u32, j: u32) -> Result<Graph, GraphError> {
    hamming_with(d, q, j, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn johnson_edges(v: u64, d: u64, q: u64) -> u64 {
        binomial_u64(v, d) * binomial_u64(d, q) * binomial_u64(v - d, d - q) / 2
    }

    fn hamming_edges(d: u32, q: u64, j: u32) -> u64 {
        q.pow(d) * binomial_u64(d as u64, j as u64) * (q - 1).pow(j) / 2
    }

    #[test]
    fn petersen_from_kneser() {
        let g = kneser(5, 2).unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn johnson_table_sizes() {
        let g = johnson(15, 3, 2).unwrap();
        assert_eq!((g.n(), g.m()), (455, 8190));
        let g = johnson(12, 7, 3).unwrap();
        assert_eq!((g.n(), g.m()), (792, 69300));
    }

    #[test]
    fn hamming_table_sizes() {
        let g = hamming(6, 2, 4).unwrap();
        assert_eq!((g.n(), g.m()), (64, 480));
    }

    #[test]
    fn hamming_2_2_1_is_four_cycle() {
        let g = hamming(2, 2, 1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn johnson_valency_formula() {
        for v in 2..=10u32 {
            for d in 1..=v {
                for q in 0..d {
                    let g = johnson(v, d, q).unwrap();
                    assert_eq!(g.m() as u64, johnson_edges(v as u64, d as u64, q as u64));
                }
            }
        }
    }

    #[test]
    fn hamming_valency_formula() {
        for (d, q) in [
            (1, 2),
            (2, 3),
            (3, 2),
            (3, 3),
            (4, 2),
            (4, 4),
            (6, 2),
            (5, 3),
        ] {
            for j in 1..=d {
                let g = hamming(d, q, j).unwrap();
                assert_eq!(g.m() as u64, hamming_edges(d, q as u64, j));
                let le = hamming_le(d, q, j).unwrap();
                let sum: u64 = (1..=j).map(|t| hamming_edges(d, q as u64, t)).sum();
                assert_eq!(le.m() as u64, sum);
            }
        }
    }

    #[test]
    fn hamming_le_large_instance() {
        let g = hamming_le(12, 2, 7).unwrap();
        assert_eq!((g.n(), g.m()), (4096, 6_760_448));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(johnson(5, 0, 0).is_err());
        assert!(johnson(5, 2, 2).is_err());
        assert!(johnson(3, 4, 0).is_err());
        assert!(hamming(0, 2, 1).is_err());
        assert!(hamming(3, 1, 1).is_err());
        assert!(hamming(3, 2, 4).is_err());
        assert!(matches!(
            hamming(40, 2, 1),
            Err(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = subsets_lex(4, 2);
        assert_eq!(s, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(subsets_lex(3, 3), vec![0b111]);
    }

    #[test]
    fn family_round_trip() {
        let f = GraphFamily::Johnson { v: 6, d: 3, q: 1 };
        assert_eq!(f.vertex_count(), Some(20));
        assert_eq!(f.generate().unwrap(), johnson(6, 3, 1).unwrap());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<GraphFamily>(&json).unwrap(), f);
    }
}

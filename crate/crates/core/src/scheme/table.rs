use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SchemeError;
use crate::graph::{digits, subsets_lex, Graph, GraphBuilder, GraphFamily, MAX_GENERATED_VERTICES};

/// Largest scheme degree `d` accepted.
pub const MAX_SCHEME_DEGREE: u32 = 64;
/// Largest vertex count accepted; every count up to it is exact in `f64`.
pub const MAX_SCHEME_VERTICES: u128 = 1 << 53;

/// `C(n, k)`, zero outside `0 <= k <= n`.
fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn sign(j: u32) -> BigInt {
    if j.is_odd() {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Krawtchouk value `K_i(u) = Σ_j (−1)^j (q−1)^{i−j} C(u,j) C(d−u,i−j)`:
/// the eigenvalue of Hamming class `i` on eigenspace `u`.
pub fn krawtchouk(d: u32, q: u32, i: u32, u: u32) -> Result<BigInt, SchemeError> {
    if i > d || u > d {
        return Err(SchemeError::OutOfRange { i, u, d });
    }
    if q < 2 {
        return Err(SchemeError::InvalidParameters(format!(
            "alphabet size {q} < 2"
        )));
    }
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for j in 0..=i {
        acc += sign(j)
            * num_traits::pow(qm1.clone(), (i - j) as usize)
            * binom(u as i64, j as i64)
            * binom((d - u) as i64, (i - j) as i64);
    }
    Ok(acc)
}

/// Eberlein value `E_i(u) = Σ_j (−1)^j C(u,j) C(d−u,i−j) C(v−d−u,i−j)`:
/// the eigenvalue of Johnson class `i` (pairs sharing `d − i` elements) on
/// eigenspace `u`. Requires `2d <= v`.
pub fn eberlein(v: u32, d: u32, i: u32, u: u32) -> Result<BigInt, SchemeError> {
    if i > d || u > d {
        return Err(SchemeError::OutOfRange { i, u, d });
    }
    if 2 * d > v {
        return Err(SchemeError::InvalidParameters(format!(
            "eberlein polynomials need 2d <= v, got v={v} d={d}"
        )));
    }
    let mut acc = BigInt::zero();
    for j in 0..=i {
        acc += sign(j)
            * binom(u as i64, j as i64)
            * binom((d - u) as i64, (i - j) as i64)
            * binom((v - d - u) as i64, (i - j) as i64);
    }
    Ok(acc)
}

/// Scheme parameters with `d` classes besides the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum SchemeFamily {
    /// Words of length `d` over `q` symbols; class = Hamming distance.
    Hamming { d: u32, q: u32 },
    /// `d`-subsets of a `v`-set with `2d <= v`; class `i` = pairs sharing
    /// `d − i` elements.
    Johnson { v: u32, d: u32 },
}

impl SchemeFamily {
    pub fn degree(&self) -> u32 {
        match *self {
            SchemeFamily::Hamming { d, .. } | SchemeFamily::Johnson { d, .. } => d,
        }
    }

    fn validate(&self) -> Result<(), SchemeError> {
        let ok = match *self {
            SchemeFamily::Hamming { d, q } => d >= 1 && q >= 2,
            SchemeFamily::Johnson { v, d } => d >= 1 && 2 * d <= v && v <= 64,
        };
        if !ok {
            return Err(SchemeError::InvalidParameters(format!("{self:?}")));
        }
        if self.degree() > MAX_SCHEME_DEGREE {
            return Err(SchemeError::TooLarge(format!(
                "degree {} exceeds {MAX_SCHEME_DEGREE}",
                self.degree()
            )));
        }
        Ok(())
    }

    fn vertex_count(&self) -> Option<u128> {
        match *self {
            SchemeFamily::Hamming { d, q } => (q as u128).checked_pow(d),
            SchemeFamily::Johnson { v, d } => binom(v as i64, d as i64).to_u128(),
        }
    }

    fn eigenvalue(&self, i: u32, u: u32) -> Result<BigInt, SchemeError> {
        match *self {
            SchemeFamily::Hamming { d, q } => krawtchouk(d, q, i, u),
            SchemeFamily::Johnson { v, d } => eberlein(v, d, i, u),
        }
    }

    /// Closed-form eigenspace dimensions.
    fn multiplicity(&self, j: u32) -> BigInt {
        match *self {
            SchemeFamily::Hamming { d, q } => {
                binom(d as i64, j as i64) * num_traits::pow(BigInt::from(q - 1), j as usize)
            }
            SchemeFamily::Johnson { v, .. } => {
                binom(v as i64, j as i64) - binom(v as i64, j as i64 - 1)
            }
        }
    }
}

/// Character table of a Hamming or Johnson scheme together with the classes
/// forming a graph's edge set.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec {
    pub family: SchemeFamily,
    pub n: u128,
    /// `valencies[i] = P[i][0]`; `valencies[0] = 1`.
    pub valencies: Vec<BigInt>,
    /// `p[i][j]`: eigenvalue of class `i` on eigenspace `j`.
    pub p: Vec<Vec<BigInt>>,
    /// Eigenspace dimensions recovered from `p`.
    pub multiplicities: Vec<BigInt>,
    /// Sorted edge classes, a subset of `1..=d`.
    pub edge_classes: Vec<usize>,
    /// Size of the subsets labelling the vertices of a Johnson instance
    /// (`d` or `v − d`); pairs sharing `t` elements lie in class
    /// `subset_size − t` either way.
    pub subset_size: u32,
}

/// Builds and self-checks `(P, valencies, multiplicities)`.
pub fn character_table(
    family: SchemeFamily,
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>, Vec<BigInt>), SchemeError> {
    family.validate()?;
    let n = family
        .vertex_count()
        .filter(|&n| n <= MAX_SCHEME_VERTICES)
        .ok_or_else(|| SchemeError::TooLarge(format!("{family:?} exceeds 2^53 vertices")))?;
    let d = family.degree();
    let mut p = Vec::with_capacity(d as usize + 1);
    for i in 0..=d {
        let row = (0..=d)
            .map(|u| family.eigenvalue(i, u))
            .collect::<Result<Vec<_>, _>>()?;
        p.push(row);
    }
    let valencies: Vec<BigInt> = p.iter().map(|row| row[0].clone()).collect();
    let nb = BigInt::from(n);
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(SchemeError::SelfCheck(format!("{family:?}: {what}")))
        }
    };
    check(p[0].iter().all(|e| e.is_one()), "identity row")?;
    check(
        valencies.iter().all(|k| *k > BigInt::zero()),
        "positive valencies",
    )?;
    let total: BigInt = valencies.iter().sum();
    check(total == nb, "valencies sum to n")?;
    // n / m_j = Σ_i P[i][j]² / k_i
    let mut mult = Vec::with_capacity(d as usize + 1);
    for j in 0..=d as usize {
        let mut s = BigRational::zero();
        for i in 0..=d as usize {
            s += BigRational::new(&p[i][j] * &p[i][j], valencies[i].clone());
        }
        let m = BigRational::from_integer(nb.clone()) / s;
        check(m.is_integer(), "integral multiplicities")?;
        let m = m.to_integer();
        check(
            m == family.multiplicity(j as u32),
            "closed-form multiplicities",
        )?;
        mult.push(m);
    }
    let msum: BigInt = mult.iter().sum();
    check(msum == nb, "multiplicities sum to n")?;
    for a in 0..=d as usize {
        for b in a..=d as usize {
            let s: BigInt = (0..=d as usize)
                .map(|j| &mult[j] * &p[a][j] * &p[b][j])
                .sum();
            let want = if a == b {
                &nb * &valencies[a]
            } else {
                BigInt::zero()
            };
            check(s == want, "row orthogonality")?;
        }
    }
    Ok((p, valencies, mult))
}

impl SchemeSpec {
    /// Scheme with the given edge classes.
    pub fn new(family: SchemeFamily, edge_classes: &[usize]) -> Result<Self, SchemeError> {
        let (p, valencies, multiplicities) = character_table(family)?;
        let d = family.degree() as usize;
        let mut classes: Vec<usize> = edge_classes.to_vec();
        classes.sort_unstable();
        classes.dedup();
        if classes.iter().any(|&c| c == 0 || c > d) {
            return Err(SchemeError::InvalidParameters(format!(
                "edge classes {edge_classes:?} must lie in 1..={d}"
            )));
        }
        let subset_size = match family {
            SchemeFamily::Johnson { d, .. } => d,
            SchemeFamily::Hamming { .. } => 0,
        };
        Ok(Self {
            n: family.vertex_count().expect("checked by character_table"),
            family,
            valencies,
            p,
            multiplicities,
            edge_classes: classes,
            subset_size,
        })
    }

    /// Scheme view of a generator family. Johnson instances with `2d > v` are
    /// mapped to the complementary subsets `(v, v − d)`; the class of a pair
    /// is unchanged. The complete graph `K_k` is `H(1, k, 1)`.
    pub fn from_family(f: &GraphFamily) -> Result<Self, SchemeError> {
        f.validate()?;
        match *f {
            GraphFamily::Hamming { d, q, j } => {
                Self::new(SchemeFamily::Hamming { d, q }, &[j as usize])
            }
            GraphFamily::HammingLe { d, q, j } => Self::new(
                SchemeFamily::Hamming { d, q },
                &(1..=j as usize).collect::<Vec<_>>(),
            ),
            GraphFamily::CompleteK { k } if k >= 2 => {
                Self::new(SchemeFamily::Hamming { d: 1, q: k }, &[1])
            }
            GraphFamily::Kneser { v, d } => Self::johnson(v, d, 0),
            GraphFamily::Johnson { v, d, q } => Self::johnson(v, d, q),
            _ => Err(SchemeError::InvalidParameters(format!(
                "{f:?} has no association scheme"
            ))),
        }
    }

    /// `J(v, d, q)`: `d`-subsets adjacent when they share `q` elements.
    pub fn johnson(v: u32, d: u32, q: u32) -> Result<Self, SchemeError> {
        if d < 1 || d > v || q >= d {
            return Err(SchemeError::InvalidParameters(format!(
                "johnson scheme needs 1 <= d <= v and q < d, got v={v} d={d} q={q}"
            )));
        }
        let dd = d.min(v - d);
        let class = d - q;
        // pairs cannot share fewer than 2d − v elements
        let classes: Vec<usize> = if class <= dd {
            vec![class as usize]
        } else {
            Vec::new()
        };
        let mut spec = Self::new(SchemeFamily::Johnson { v, d: dd }, &classes)?;
        spec.subset_size = d;
        Ok(spec)
    }

    pub fn degree(&self) -> usize {
        self.family.degree() as usize
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub fn is_edge_class(&self, i: usize) -> bool {
        self.edge_classes.binary_search(&i).is_ok()
    }

    /// `P` in floating point.
    pub fn p_f64(&self) -> Vec<Vec<f64>> {
        self.p
            .iter()
            .map(|row| row.iter().map(|e| e.to_f64().expect("finite")).collect())
            .collect()
    }

    pub fn valencies_f64(&self) -> Vec<f64> {
        self.valencies
            .iter()
            .map(|e| e.to_f64().expect("finite"))
            .collect()
    }

    fn small_n(&self) -> Result<usize, SchemeError> {
        if self.n > MAX_GENERATED_VERTICES as u128 {
            return Err(SchemeError::TooLarge(format!(
                "{} vertices exceed {MAX_GENERATED_VERTICES}",
                self.n
            )));
        }
        Ok(self.n as usize)
    }

    /// Class of every vertex pair, row-major `n × n`, in the vertex order of
    /// the graph generators.
    pub fn class_matrix(&self) -> Result<Vec<u8>, SchemeError> {
        let n = self.small_n()?;
        let mut out = vec![0u8; n * n];
        match self.family {
            SchemeFamily::Hamming { d, q } => {
                let words: Vec<Vec<u32>> = (0..n).map(|x| digits(x, d, q)).collect();
                for a in 0..n {
                    for b in a + 1..n {
                        let c = words[a]
                            .iter()
                            .zip(&words[b])
                            .filter(|(x, y)| x != y)
                            .count() as u8;
                        out[a * n + b] = c;
                        out[b * n + a] = c;
                    }
                }
            }
            SchemeFamily::Johnson { v, .. } => {
                let sets = subsets_lex(v, self.subset_size);
                for a in 0..n {
                    for b in a + 1..n {
                        let c = (self.subset_size - (sets[a] & sets[b]).count_ones()) as u8;
                        out[a * n + b] = c;
                        out[b * n + a] = c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Graph whose edges are the pairs in the edge classes.
    pub fn graph(&self) -> Result<Graph, SchemeError> {
        let n = self.small_n()?;
        let cls = self.class_matrix()?;
        let mut b = GraphBuilder::new(n);
        for a in 0..n {
            for c in a + 1..n {
                if self.is_edge_class(cls[a * n + c] as usize) {
                    b.push_unchecked(a, c);
                }
            }
        }
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hamming_2_2_table() {
        let (p, k, m) = character_table(SchemeFamily::Hamming { d: 2, q: 2 }).unwrap();
        assert_eq!(
            p,
            vec![ints(&[1, 1, 1]), ints(&[2, 0, -2]), ints(&[1, -1, 1])]
        );
        assert_eq!(k, ints(&[1, 2, 1]));
        assert_eq!(m, ints(&[1, 2, 1]));
    }

    #[test]
    fn krawtchouk_small_values() {
        for u in 0..=6 {
            assert_eq!(krawtchouk(6, 2, 0, u).unwrap(), BigInt::one());
        }
        assert_eq!(krawtchouk(6, 2, 1, 0).unwrap(), BigInt::from(6));
        assert_eq!(krawtchouk(6, 2, 4, 0).unwrap(), BigInt::from(15));
        assert!(matches!(
            krawtchouk(3, 2, 4, 0),
            Err(SchemeError::OutOfRange { .. })
        ));
    }

    #[test]
    fn eberlein_small_values() {
        assert_eq!(eberlein(10, 2, 1, 0).unwrap(), BigInt::from(16));
        assert_eq!(eberlein(10, 2, 0, 2).unwrap(), BigInt::one());
        assert!(eberlein(5, 3, 1, 0).is_err());
    }

    #[test]
    fn large_degree_tables_check_out() {
        character_table(SchemeFamily::Hamming { d: 40, q: 2 }).unwrap();
        character_table(SchemeFamily::Johnson { v: 60, d: 12 }).unwrap();
        assert!(matches!(
            character_table(SchemeFamily::Hamming { d: 60, q: 3 }),
            Err(SchemeError::TooLarge(_))
        ));
    }

    #[test]
    fn johnson_complement_mapping() {
        let s = SchemeSpec::johnson(12, 7, 3).unwrap();
        assert_eq!(s.family, SchemeFamily::Johnson { v: 12, d: 5 });
        assert_eq!(s.edge_classes, vec![4]);
        assert_eq!(s.n, 792);
        let g = s.graph().unwrap();
        assert_eq!(g, crate::graph::johnson(12, 7, 3).unwrap());
    }

    #[test]
    fn generated_graphs_match_families() {
        let cases = [
            GraphFamily::Kneser { v: 7, d: 2 },
            GraphFamily::Johnson { v: 8, d: 3, q: 1 },
            GraphFamily::Hamming { d: 3, q: 3, j: 2 },
            GraphFamily::HammingLe { d: 4, q: 2, j: 2 },
            GraphFamily::CompleteK { k: 5 },
        ];
        for f in cases {
            let s = SchemeSpec::from_family(&f).unwrap();
            assert_eq!(s.graph().unwrap(), f.generate().unwrap(), "{f:?}");
        }
    }
}

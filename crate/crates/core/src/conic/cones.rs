use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

/// One block of the slack cone. `Psd(s)` occupies `s (s + 1) / 2` entries
/// in scaled lower-triangular column-major order (off-diagonals times √2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cone {
    Zero(usize),
    NonNeg(usize),
    SecondOrder(usize),
    Psd(usize),
}

impl Cone {
    pub fn dim(&self) -> usize {
        match *self {
            Cone::Zero(m) | Cone::NonNeg(m) | Cone::SecondOrder(m) => m,
            Cone::Psd(s) => svec_len(s),
        }
    }

    /// Blocks whose scaling must be uniform across all entries.
    pub fn is_coupled(&self) -> bool {
        matches!(self, Cone::SecondOrder(_) | Cone::Psd(_))
    }
}

/// Ordered product of cone blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub blocks: Vec<Cone>,
}

impl ConeSpec {
    pub fn new(blocks: Vec<Cone>) -> Self {
        Self { blocks }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Cone::dim).sum()
    }

    /// `(offset, block)` pairs.
    pub fn offsets(&self) -> impl Iterator<Item = (usize, Cone)> + '_ {
        self.blocks.iter().scan(0, |off, &c| {
            let start = *off;
            *off += c.dim();
            Some((start, c))
        })
    }

    pub fn max_psd_order(&self) -> usize {
        self.blocks
            .iter()
            .filter_map(|c| match c {
                Cone::Psd(s) => Some(*s),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn svec_len(s: usize) -> usize {
    s * (s + 1) / 2
}

/// Position of entry `(i, j)`, `i >= j`, inside a `Psd(s)` block.
#[inline]
pub fn svec_index(s: usize, i: usize, j: usize) -> usize {
    debug_assert!(i >= j && i < s);
    j * s - j * (j + 1) / 2 + i
}

/// Scaled lower-triangular vectorization of a symmetric matrix.
pub fn svec(m: &Mat<f64>) -> Vec<f64> {
    let s = m.nrows();
    let mut out = Vec::with_capacity(svec_len(s));
    for j in 0..s {
        out.push(m[(j, j)]);
        for i in j + 1..s {
            out.push(m[(i, j)] * std::f64::consts::SQRT_2);
        }
    }
    out
}

/// Inverse of [`svec`].
pub fn smat(v: &[f64], s: usize) -> Mat<f64> {
    debug_assert_eq!(v.len(), svec_len(s));
    let mut m = Mat::zeros(s, s);
    let mut k = 0;
    for j in 0..s {
        m[(j, j)] = v[k];
        k += 1;
        for i in j + 1..s {
            let x = v[k] * std::f64::consts::FRAC_1_SQRT_2;
            m[(i, j)] = x;
            m[(j, i)] = x;
            k += 1;
        }
    }
    m
}

/// Euclidean projection of `v` onto the product cone.
pub fn project_cone(v: &[f64], cones: &ConeSpec) -> Vec<f64> {
    let mut out = v.to_vec();
    project_in_place(&mut out, cones);
    out
}

/// In-place projection onto the product cone.
pub fn project_in_place(v: &mut [f64], cones: &ConeSpec) {
    assert_eq!(v.len(), cones.dim(), "vector length does not match cone");
    for (off, cone) in cones.offsets() {
        let block = &mut v[off..off + cone.dim()];
        match cone {
            Cone::Zero(_) => block.fill(0.0),
            Cone::NonNeg(_) => block.iter_mut().for_each(|x| *x = x.max(0.0)),
            Cone::SecondOrder(_) => project_soc(block),
            Cone::Psd(s) => project_psd(block, s),
        }
    }
}

/// Projection onto the dual cone (the whole space for `Zero` blocks).
pub fn project_dual_in_place(v: &mut [f64], cones: &ConeSpec) {
    for (off, cone) in cones.offsets() {
        let block = &mut v[off..off + cone.dim()];
        match cone {
            Cone::Zero(_) => {}
            Cone::NonNeg(_) => block.iter_mut().for_each(|x| *x = x.max(0.0)),
            Cone::SecondOrder(_) => project_soc(block),
            Cone::Psd(s) => project_psd(block, s),
        }
    }
}

fn project_soc(block: &mut [f64]) {
    if block.is_empty() {
        return;
    }
    let t = block[0];
    let nz = block[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
    if nz <= t {
        return;
    }
    if nz <= -t {
        block.fill(0.0);
        return;
    }
    let a = 0.5 * (t + nz);
    block[0] = a;
    let f = a / nz;
    block[1..].iter_mut().for_each(|x| *x *= f);
}

fn project_psd(block: &mut [f64], s: usize) {
    if s == 1 {
        block[0] = block[0].max(0.0);
        return;
    }
    let m = smat(block, s);
    let Ok(eig) = m.self_adjoint_eigen(Side::Lower) else {
        return;
    };
    let vals = eig.S().column_vector();
    let vecs = eig.U();
    let neg: Vec<usize> = (0..s).filter(|&i| vals[i] < 0.0).collect();
    if neg.is_empty() {
        return;
    }
    let pos: Vec<usize> = (0..s).filter(|&i| vals[i] > 0.0).collect();
    // P = Σ_{λ>0} λ vvᵀ = M + Σ_{λ<0} |λ| vvᵀ; use the smaller set
    let (idx, base) = if pos.len() <= neg.len() {
        (pos, None)
    } else {
        (neg, Some(m))
    };
    let r = idx.len();
    let mut w = Mat::<f64>::zeros(s, r);
    for (c, &e) in idx.iter().enumerate() {
        let scale = vals[e].abs().sqrt();
        for i in 0..s {
            w[(i, c)] = vecs[(i, e)] * scale;
        }
    }
    let mut out = match base {
        Some(m) => m,
        None => Mat::zeros(s, s),
    };
    if r > 0 {
        faer::linalg::matmul::matmul(
            out.as_mut(),
            faer::Accum::Add,
            w.as_ref(),
            w.transpose(),
            1.0,
            faer::Par::Seq,
        );
    }
    let mut k = 0;
    for j in 0..s {
        block[k] = out[(j, j)];
        k += 1;
        for i in j + 1..s {
            block[k] = out[(i, j)] * std::f64::consts::SQRT_2;
            k += 1;
        }
    }
}

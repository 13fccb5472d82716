use super::{ColorAssignment, HeurError};
use crate::graph::Graph;

/// Largest product graph `K_k □ G` the product heuristic builds.
pub const PRODUCT_VERTEX_CAP: usize = 20_000;

/// Maximal stable set: repeatedly take the remaining vertex of minimum
/// residual degree, ties by maximum support (sum of the neighbors' residual
/// degrees), then by lowest index; delete it and its neighbors.
pub fn min_degree_stable_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg = g.degrees();
    let mut out = Vec::new();
    while let Some(min_deg) = (0..n).filter(|&v| alive[v]).map(|v| deg[v]).min() {
        let support = |v: usize| -> usize {
            g.neighbors(v)
                .iter()
                .filter(|&&u| alive[u])
                .map(|&u| deg[u])
                .sum()
        };
        let mut pick = usize::MAX;
        let mut pick_support = 0;
        for v in (0..n).filter(|&v| alive[v] && deg[v] == min_deg) {
            let s = support(v);
            if pick == usize::MAX || s > pick_support {
                pick = v;
                pick_support = s;
            }
        }
        out.push(pick);
        let mut removed: Vec<usize> = g
            .neighbors(pick)
            .iter()
            .copied()
            .filter(|&u| alive[u])
            .collect();
        removed.push(pick);
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for &w in g.neighbors(u) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Stable set of `K_k □ G` from [`min_degree_stable_set`], mapped back:
/// product vertex `r·n + i` colors `i` with `r + 1`.
pub fn product_heuristic_lb(g: &Graph, k: usize) -> Result<ColorAssignment, HeurError> {
    if k == 0 {
        return Err(HeurError::InvalidParameters("k must be at least 1".into()));
    }
    let size = k.saturating_mul(g.n());
    if size > PRODUCT_VERTEX_CAP {
        return Err(HeurError::CapExceeded {
            what: "k·n",
            size,
            cap: PRODUCT_VERTEX_CAP,
        });
    }
    let prod = g
        .cartesian_product_complete(k)
        .map_err(|e| HeurError::InvalidParameters(e.to_string()))?;
    let n = g.n();
    let mut color = vec![0; n];
    for v in min_degree_stable_set(&prod) {
        color[v % n] = v / n + 1;
    }
    ColorAssignment::new(g, color, k)
}

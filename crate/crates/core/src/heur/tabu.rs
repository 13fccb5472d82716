use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ColorAssignment, HeurError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabuParams {
    pub max_iterations: usize,
    /// A vertex evicted from color `c` may not move back into `c` for
    /// `tenure + U{0..=tenure}` iterations. At least 1.
    pub tenure: usize,
    pub rng_seed: u64,
    /// Stop after this many iterations without improving the best value.
    pub stall_limit: usize,
}

impl Default for TabuParams {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            tenure: 10,
            rng_seed: 0,
            stall_limit: 2_000,
        }
    }
}

/// Vertices by ascending degree, ties by index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

/// Colors `1..=k` in turn, each as a maximal stable set over the vertices in
/// ascending-degree order.
pub fn greedy_coloring(g: &Graph, k: usize) -> ColorAssignment {
    let order = degree_order(g);
    let mut color = vec![0; g.n()];
    for c in 1..=k {
        for &v in &order {
            if color[v] == 0 && g.neighbors(v).iter().all(|&u| color[u] != c) {
                color[v] = c;
            }
        }
    }
    ColorAssignment { color, k }
}

/// Search state with per-vertex counts of neighbors in each color.
struct State<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// `count[v * (k + 1) + c]`: neighbors of `v` with color `c`.
    count: Vec<usize>,
    value: usize,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, a: &ColorAssignment) -> Self {
        let k = a.k;
        let mut count = vec![0; g.n() * (k + 1)];
        for v in 0..g.n() {
            for &u in g.neighbors(v) {
                count[v * (k + 1) + a.color[u]] += 1;
            }
        }
        Self {
            g,
            k,
            color: a.color.clone(),
            count,
            value: a.value(),
        }
    }

    fn set(&mut self, v: usize, c: usize) {
        let old = self.color[v];
        for &u in self.g.neighbors(v) {
            self.count[u * (self.k + 1) + old] -= 1;
            self.count[u * (self.k + 1) + c] += 1;
        }
        self.color[v] = c;
        if old == 0 {
            self.value += 1;
        }
        if c == 0 {
            self.value -= 1;
        }
    }

    fn free_color(&self, v: usize) -> Option<usize> {
        (1..=self.k).find(|&c| self.count[v * (self.k + 1) + c] == 0)
    }
}

/// Greedy start, then tabu search over partial colorings. Each iteration
/// moves an uncolored vertex `u` into the color class `c` with the fewest
/// members adjacent to `u` (ties drawn from the seeded generator), uncolors
/// those neighbors and forbids them color `c` for a while, then colors every
/// uncolored vertex that fits, in ascending-degree order. Returns the best
/// assignment seen.
pub fn tabu_lb(g: &Graph, k: usize, params: &TabuParams) -> Result<ColorAssignment, HeurError> {
    if k == 0 {
        return Err(HeurError::InvalidParameters("k must be at least 1".into()));
    }
    if params.tenure == 0 {
        return Err(HeurError::InvalidParameters(
            "tenure must be at least 1".into(),
        ));
    }
    let n = g.n();
    let k1 = k + 1;
    let start = greedy_coloring(g, k);
    let mut best = start.clone();
    let mut st = State::new(g, &start);
    let order = degree_order(g);
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    // `(u, c)` is forbidden before iteration `tabu_until[u * k1 + c]`
    let mut tabu_until = vec![0usize; n * k1];
    let mut stall = 0;
    let mut moves = Vec::new();
    let mut evicted = Vec::new();
    for iter in 1..=params.max_iterations {
        moves.clear();
        let mut fewest = usize::MAX;
        for u in (0..n).filter(|&u| st.color[u] == 0) {
            for c in 1..=k {
                if iter < tabu_until[u * k1 + c] {
                    continue;
                }
                let clash = st.count[u * k1 + c];
                if clash < fewest {
                    moves.clear();
                    fewest = clash;
                }
                if clash == fewest {
                    moves.push((u, c));
                }
            }
        }
        if moves.is_empty() {
            break;
        }
        let (u, c) = moves[rng.random_range(0..moves.len())];
        evicted.clear();
        evicted.extend(g.neighbors(u).iter().copied().filter(|&w| st.color[w] == c));
        for &w in &evicted {
            st.set(w, 0);
            tabu_until[w * k1 + c] = iter + params.tenure + rng.random_range(0..=params.tenure);
        }
        st.set(u, c);
        for &w in &order {
            if st.color[w] == 0 {
                if let Some(c) = st.free_color(w) {
                    st.set(w, c);
                }
            }
        }
        if st.value > best.value() {
            best = ColorAssignment {
                color: st.color.clone(),
                k,
            };
            stall = 0;
        } else {
            stall += 1;
            if stall >= params.stall_limit {
                break;
            }
        }
    }
    best.validate(g)?;
    Ok(best)
}

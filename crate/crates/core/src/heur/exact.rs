use super::tabu::greedy_coloring;
use super::{ColorAssignment, HeurError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactCaps {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for ExactCaps {
    fn default() -> Self {
        Self {
            max_n: 20,
            max_k: 4,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    color: Vec<usize>,
    /// `count[v * (k + 1) + c]`: neighbors of `v` with color `c >= 1`.
    count: Vec<usize>,
    best: usize,
    best_color: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, v: usize, c: usize) -> bool {
        self.count[v * (self.k + 1) + c] == 0
    }

    fn paint(&mut self, v: usize, c: usize, delta: isize) {
        for &u in self.g.neighbors(v) {
            let slot = &mut self.count[u * (self.k + 1) + c];
            *slot = slot.wrapping_add_signed(delta);
        }
        self.color[v] = if delta > 0 { c } else { 0 };
    }

    /// `used`: colors `1..=used` already appear; a new color is always `used + 1`.
    fn dfs(&mut self, pos: usize, used: usize, value: usize) {
        if value > self.best {
            self.best = value;
            self.best_color.clone_from(&self.color);
        }
        let n = self.order.len();
        if pos == n {
            return;
        }
        // every later vertex that still admits some color
        let open = if used < self.k {
            n - pos
        } else {
            self.order[pos..]
                .iter()
                .filter(|&&u| (1..=used).any(|c| self.fits(u, c)))
                .count()
        };
        if value + open <= self.best {
            return;
        }
        let v = self.order[pos];
        for c in 1..=(used + 1).min(self.k) {
            if self.fits(v, c) {
                self.paint(v, c, 1);
                self.dfs(pos + 1, used.max(c), value + 1);
                self.paint(v, c, -1);
            }
        }
        self.dfs(pos + 1, used, value);
    }
}

/// [`exact_alpha_k_with`] under the default caps `n <= 20`, `k <= 4`.
pub fn exact_alpha_k(g: &Graph, k: usize) -> Result<(usize, ColorAssignment), HeurError> {
    exact_alpha_k_with(g, k, ExactCaps::default())
}

/// Exact maximum k-colorable subgraph by branching on each vertex (one
/// branch per admissible color, then exclusion), colors introduced in
/// increasing order of first use, pruned against the incumbent.
pub fn exact_alpha_k_with(
    g: &Graph,
    k: usize,
    caps: ExactCaps,
) -> Result<(usize, ColorAssignment), HeurError> {
    if k == 0 {
        return Err(HeurError::InvalidParameters("k must be at least 1".into()));
    }
    if g.n() > caps.max_n {
        return Err(HeurError::CapExceeded {
            what: "n",
            size: g.n(),
            cap: caps.max_n,
        });
    }
    if k > caps.max_k {
        return Err(HeurError::CapExceeded {
            what: "k",
            size: k,
            cap: caps.max_k,
        });
    }
    let n = g.n();
    let start = greedy_coloring(g, k);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = Search {
        g,
        k,
        order,
        color: vec![0; n],
        count: vec![0; n * (k + 1)],
        best: start.value(),
        best_color: start.color().to_vec(),
    };
    s.dfs(0, 0, 0);
    let witness = ColorAssignment::new(g, s.best_color, k)?;
    Ok((s.best, witness))
}

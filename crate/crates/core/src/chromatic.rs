//! Exact chromatic number by iterative deepening on the number of colors.
//!
//! Vertices are colored in a fixed order (decreasing degree, then index);
//! a vertex may open at most one new color, which removes color-permutation
//! symmetry. Exponential in the worst case, so the solver refuses graphs
//! above a configurable order instead of guessing.

use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_VERTEX_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("graph is empty")]
    Empty,
    #[error("exact limit exceeded: {order} vertices > limit {limit}")]
    ExactLimitExceeded { order: usize, limit: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct ChromaticSolver {
    pub vertex_limit: usize,
}

impl Default for ChromaticSolver {
    fn default() -> Self {
        ChromaticSolver { vertex_limit: DEFAULT_VERTEX_LIMIT }
    }
}

impl ChromaticSolver {
    pub fn with_limit(vertex_limit: usize) -> Self {
        ChromaticSolver { vertex_limit }
    }

    pub fn chromatic_number(&self, g: &Graph) -> Result<usize, ChromaticError> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(ChromaticError::Empty);
        }
        if n > self.vertex_limit {
            return Err(ChromaticError::ExactLimitExceeded { order: n, limit: self.vertex_limit });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let lower = if g.edge_count() > 0 { 2 } else { 1 };
        Ok((lower..=n).find(|&k| colorable(g, &order, k)).unwrap_or(n))
    }
}

/// Exact chromatic number with the default vertex limit.
pub fn chromatic_number(g: &Graph) -> Result<usize, ChromaticError> {
    ChromaticSolver::default().chromatic_number(g)
}

fn colorable(g: &Graph, order: &[usize], k: usize) -> bool {
    let mut color = vec![usize::MAX; g.vertex_count()];
    extend(g, order, k, 0, 0, &mut color)
}

fn extend(g: &Graph, order: &[usize], k: usize, depth: usize, used: usize, color: &mut [usize]) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&w| color[w] != c) {
            color[v] = c;
            if extend(g, order, k, depth + 1, used.max(c + 1), color) {
                return true;
            }
        }
    }
    color[v] = usize::MAX;
    false
}

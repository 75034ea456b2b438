//! The 2-fold interlacement `G[:]`.
//!
//! For a spine on `n` vertices, vertex `v` has two copies: `v' = v` and
//! `v'' = v + n`. Every spine edge `vw` contributes the four edges
//! `v'w'`, `v''w''`, `v'w''` and `v''w'`; there is never an edge `v'v''`.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterlaceError {
    #[error("spine must have at least 2 vertices, got {0}")]
    Trivial(usize),
    #[error("spine is disconnected")]
    Disconnected,
}

/// `G[:]` together with the spine order used for labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacedGraph {
    graph: Graph,
    spine_order: usize,
}

impl InterlacedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn spine_order(&self) -> usize {
        self.spine_order
    }

    /// `v'`.
    pub fn prime(&self, v: Vertex) -> Vertex {
        v
    }

    /// `v''`.
    pub fn double_prime(&self, v: Vertex) -> Vertex {
        v + self.spine_order
    }

    /// The spine vertex a copy belongs to.
    pub fn spine_vertex(&self, x: Vertex) -> Vertex {
        x % self.spine_order
    }
}

/// Builds `G[:]` for a connected spine with at least two vertices.
pub fn interlacement(spine: &Graph) -> Result<InterlacedGraph, InterlaceError> {
    let n = spine.vertex_count();
    if n < 2 {
        return Err(InterlaceError::Trivial(n));
    }
    if !spine.is_connected() {
        return Err(InterlaceError::Disconnected);
    }
    Ok(InterlacedGraph { graph: interlace_edges(spine), spine_order: n })
}

fn interlace_edges(spine: &Graph) -> Graph {
    let n = spine.vertex_count();
    let edges = spine.edges().flat_map(|(v, w)| [(v, w), (v + n, w + n), (v, w + n), (v + n, w)]);
    Graph::from_edges(2 * n, edges).expect("interlacement of a simple graph is simple")
}

/// True iff `candidate` is exactly `spine[:]` under the canonical labeling.
pub fn is_interlacement_of(candidate: &Graph, spine: &Graph) -> bool {
    candidate.vertex_count() == 2 * spine.vertex_count() && *candidate == interlace_edges(spine)
}

use serde::{Deserialize, Serialize};

use crate::graph::{complete_betti, complete_graph, Edge, Graph, GraphError};

/// A synthesized spine: `K_p`, minus some edges, optionally with a ladder
/// glued onto one of the remaining edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineRecipe {
    pub base_order: usize,
    pub removed_edges: Vec<Edge>,
    /// Number of rungs of the glued ladder; 0 means no ladder.
    pub glued_ladder_rungs: usize,
    pub glue_edge: Option<Edge>,
}

impl SpineRecipe {
    /// `K_p` on its own.
    pub fn complete(p: usize) -> Self {
        SpineRecipe { base_order: p, removed_edges: Vec::new(), glued_ladder_rungs: 0, glue_edge: None }
    }

    /// Cycle rank of the materialized spine, assuming it is connected.
    pub fn expected_betti(&self) -> usize {
        complete_betti(self.base_order as u64) as usize - self.removed_edges.len()
            + self.glued_ladder_rungs.saturating_sub(1)
    }

    pub fn materialize(&self) -> Result<Graph, GraphError> {
        if self.base_order < 2 {
            return Err(GraphError::TooSmall { what: "base order", min: 2, got: self.base_order });
        }
        let base = complete_graph(self.base_order)?.without_edges(&self.removed_edges)?;
        if !base.is_connected() {
            return Err(GraphError::Disconnected);
        }
        match (self.glued_ladder_rungs, self.glue_edge) {
            (0 | 1, _) => Ok(base),
            (k, Some(e)) => base.glue_ladder(e, k),
            (k, None) => Err(GraphError::MissingGlueEdge(k)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_deleted() {
        let r = SpineRecipe::complete(12);
        let g = r.materialize().unwrap();
        assert_eq!((g.edge_count(), r.expected_betti()), (66, 55));

        let r = SpineRecipe { removed_edges: vec![(1, 2), (1, 3)], ..SpineRecipe::complete(12) };
        let g = r.materialize().unwrap();
        assert_eq!(g.betti().unwrap(), 53);
        assert_eq!(r.expected_betti(), 53);
    }

    #[test]
    fn with_ladder() {
        let r = SpineRecipe { glued_ladder_rungs: 3, glue_edge: Some((0, 1)), ..SpineRecipe::complete(4) };
        let g = r.materialize().unwrap();
        assert_eq!((g.vertex_count(), g.betti().unwrap(), r.expected_betti()), (8, 5, 5));
    }

    #[test]
    fn invalid_recipes() {
        let disconnecting = SpineRecipe { removed_edges: vec![(0, 1)], ..SpineRecipe::complete(2) };
        assert_eq!(disconnecting.materialize(), Err(GraphError::Disconnected));
        let missing = SpineRecipe { removed_edges: vec![(0, 9)], ..SpineRecipe::complete(4) };
        assert!(missing.materialize().is_err());
        let no_glue_edge = SpineRecipe { glued_ladder_rungs: 3, ..SpineRecipe::complete(4) };
        assert_eq!(no_glue_edge.materialize(), Err(GraphError::MissingGlueEdge(3)));
        assert!(SpineRecipe::complete(1).materialize().is_err());
    }
}

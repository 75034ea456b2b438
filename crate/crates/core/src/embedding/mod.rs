//! Oriented combinatorial embeddings.
//!
//! A [`RotationSystem`] fixes a cyclic order of neighbors at every vertex.
//! Faces are traced with a single convention: the arc following `u -> v`
//! is `v -> w`, where `w` comes right after `u` in the rotation at `v`.
//! Genus is always recomputed from Euler's formula on the traced faces and
//! never carried along by the constructions, which keeps this module an
//! independent check of everything built on top of it.

mod enumerate;
mod file;
mod verify;

pub use enumerate::{
    anchor_vertex, collect_embeddings, enumerate_embeddings, quadrangulations, rotation_choices, rotation_space_size,
    EnumerationBudget, Enumerator, DEFAULT_ENUMERATION_BUDGET,
};
pub use file::{parse_embedding, write_embedding, EmbeddingFile};
pub use verify::{check_face, verify_quadrangulation, FaceFailure, FailureCause, VerificationReport};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {vertex} is not a permutation of its neighbors")]
    NotAPermutation { vertex: Vertex },
    #[error("expected {expected} rotations, got {got}")]
    RotationCount { expected: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("rotation space of {size} systems exceeds the enumeration budget {budget}; use the backtracking searcher")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed embedding file: {0}")]
    Format(String),
}

/// A cyclic order of neighbors at every vertex of a graph.
///
/// Rotations are stored starting from the smallest neighbor, so two systems
/// describing the same embedding compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationSystem {
    rotations: Vec<Vec<Vertex>>,
    graph: Graph,
}

fn rotate_to_min(r: &mut [Vertex]) {
    if let Some(i) = r.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i) {
        r.rotate_left(i);
    }
}

impl RotationSystem {
    /// Checks that every rotation is a permutation of the vertex's neighbors.
    pub fn new(graph: Graph, mut rotations: Vec<Vec<Vertex>>) -> Result<Self, EmbeddingError> {
        if rotations.len() != graph.vertex_count() {
            return Err(EmbeddingError::RotationCount { expected: graph.vertex_count(), got: rotations.len() });
        }
        for (v, r) in rotations.iter_mut().enumerate() {
            let mut sorted = r.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(EmbeddingError::NotAPermutation { vertex: v });
            }
            rotate_to_min(r);
        }
        Ok(RotationSystem { rotations, graph })
    }

    /// Derives the graph from the rotations; the neighbor relation must be
    /// symmetric and simple.
    pub fn from_rotations(rotations: Vec<Vec<Vertex>>) -> Result<Self, EmbeddingError> {
        let n = rotations.len();
        let mut edges = Vec::new();
        for (u, r) in rotations.iter().enumerate() {
            for &v in r {
                if v >= n {
                    return Err(GraphError::OutOfRange { u, v, n }.into());
                }
                if u < v {
                    edges.push((u, v));
                } else if u == v {
                    return Err(GraphError::Loop(u, v).into());
                }
            }
        }
        let graph = Graph::from_edges(n, edges)?;
        RotationSystem::new(graph, rotations)
    }

    /// Skips validation; callers guarantee the permutation invariant and
    /// the min-first normalization.
    pub(crate) fn from_parts_unchecked(graph: Graph, rotations: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(rotations.iter().enumerate().all(|(v, r)| {
            let mut s = r.clone();
            s.sort_unstable();
            s == graph.neighbors(v) && r.first() == s.first()
        }));
        RotationSystem { rotations, graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    /// The mirror embedding (every rotation reversed).
    pub fn mirror(&self) -> RotationSystem {
        let rotations = self
            .rotations
            .iter()
            .map(|r| {
                let mut m: Vec<Vertex> = r.iter().rev().copied().collect();
                rotate_to_min(&mut m);
                m
            })
            .collect();
        RotationSystem { rotations, graph: self.graph.clone() }
    }

    /// Faces, counts and genus of this embedding.
    pub fn trace_faces(&self) -> Result<FaceSet, EmbeddingError> {
        trace_faces(self)
    }
}

impl std::fmt::Debug for RotationSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("RotationSystem").field(&self.rotations).finish()
    }
}

/// Arc bookkeeping: arc `offset[v] + i` is `v -> rotation(v)[i]`.
pub(crate) struct Arcs<'a> {
    rs: &'a RotationSystem,
    offset: Vec<usize>,
    /// `reverse_pos[a]` is the position of the tail of `a` in the rotation at its head.
    reverse_pos: Vec<usize>,
}

impl<'a> Arcs<'a> {
    pub(crate) fn new(rs: &'a RotationSystem) -> Self {
        let n = rs.rotations.len();
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for r in &rs.rotations {
            offset.push(offset.last().unwrap() + r.len());
        }
        // position of each neighbor in v's rotation, sorted by neighbor
        let sorted_pos: Vec<Vec<(Vertex, usize)>> = rs
            .rotations
            .iter()
            .map(|r| {
                let mut p: Vec<_> = r.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                p.sort_unstable();
                p
            })
            .collect();
        let mut reverse_pos = vec![0; offset[n]];
        for (u, r) in rs.rotations.iter().enumerate() {
            for (i, &v) in r.iter().enumerate() {
                let j = sorted_pos[v].binary_search_by_key(&u, |&(x, _)| x).unwrap();
                reverse_pos[offset[u] + i] = sorted_pos[v][j].1;
            }
        }
        Arcs { rs, offset, reverse_pos }
    }

    pub(crate) fn len(&self) -> usize {
        self.reverse_pos.len()
    }

    pub(crate) fn tail(&self, a: usize) -> Vertex {
        self.offset.partition_point(|&o| o <= a) - 1
    }

    pub(crate) fn head(&self, a: usize) -> Vertex {
        let u = self.tail(a);
        self.rs.rotations[u][a - self.offset[u]]
    }

    pub(crate) fn next(&self, a: usize) -> usize {
        let v = self.head(a);
        let d = self.rs.rotations[v].len();
        self.offset[v] + (self.reverse_pos[a] + 1) % d
    }

    /// Calls `f` with the vertex walk of every face, in order of first arc.
    pub(crate) fn for_each_face(&self, mut f: impl FnMut(&[Vertex]) -> bool) {
        let mut seen = vec![false; self.len()];
        let mut walk = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            walk.clear();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                walk.push(self.tail(a));
                a = self.next(a);
            }
            if !f(&walk) {
                return;
            }
        }
    }
}

/// The faces of an embedding together with its vertex, edge and face counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    /// Closed vertex walks, each rotated to start at its lexicographically
    /// smallest arc; faces sorted by that arc.
    pub faces: Vec<Vec<Vertex>>,
    pub genus: usize,
    /// Vertices.
    pub alpha0: usize,
    /// Edges.
    pub alpha1: usize,
    /// Faces.
    pub alpha2: usize,
}

impl FaceSet {
    pub fn face_lengths(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }
}

fn canonical_walk(walk: &[Vertex]) -> Vec<Vertex> {
    let k = walk.len();
    let start = (0..k).min_by_key(|&i| (walk[i], walk[(i + 1) % k])).unwrap();
    let mut w = walk.to_vec();
    w.rotate_left(start);
    w
}

/// Traces every face of `rs` and computes the genus from Euler's formula.
pub fn trace_faces(rs: &RotationSystem) -> Result<FaceSet, EmbeddingError> {
    let g = rs.graph();
    if g.edge_count() == 0 {
        return Err(EmbeddingError::NoEdges);
    }
    if !g.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let arcs = Arcs::new(rs);
    let mut faces = Vec::new();
    arcs.for_each_face(|w| {
        faces.push(canonical_walk(w));
        true
    });
    faces.sort_unstable_by_key(|f| (f[0], f[1 % f.len()]));
    let (v, e, f) = (g.vertex_count(), g.edge_count(), faces.len());
    let twice_genus = 2 + e - v - f;
    debug_assert!(twice_genus % 2 == 0);
    Ok(FaceSet { faces, genus: twice_genus / 2, alpha0: v, alpha1: e, alpha2: f })
}

/// Fast check that every face is a 4-cycle on distinct vertices.
pub fn is_simple_quadrangulation(rs: &RotationSystem) -> bool {
    if rs.graph().edge_count() == 0 {
        return false;
    }
    let arcs = Arcs::new(rs);
    let mut ok = true;
    arcs.for_each_face(|w| {
        ok = w.len() == 4 && w[0] != w[2] && w[1] != w[3];
        ok
    });
    ok
}

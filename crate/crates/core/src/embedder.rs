//! Constructive spinal quadrangulations.
//!
//! The builder grows a rotation `rho` of the spine one edge at a time and
//! reads the rotation system of `G[:]` off it:
//!
//! * at `v'` the neighbors are `w', w''` for each `w` in `rho(v)`, in order;
//! * at `v''` it is the same sequence reversed.
//!
//! With this layout each corner `(u, w)` of `rho(v)` (consecutive
//! neighbors) bounds exactly one face of `G[:]`, the quadrilateral
//! `(v', w', v'', u'')`, and there are no other faces. So `G[:]` has
//! `2|E(G)|` simple quadrilateral faces and genus `beta(G)` whatever `rho`
//! is.
//!
//! Edges are added in two phases. First a breadth-first spanning tree is
//! grown by leaf insertion: hanging `x` off `v` at corner `(a, b)` replaces
//! the face `(v', b', v'', a'')` by three quadrilaterals, keeping a sphere.
//! Then each chord `vw` (lexicographic order) is inserted at one corner of
//! `v` and one corner of `w`. That removes one face at each end and glues a
//! tube carrying `v'w', w'v'', v''w'', w''v'`, leaving four new faces, so
//! every chord adds one handle and two faces. The corner used is always
//! the oldest corner at that vertex. The two consumed faces are never equal
//! (one has `v', v''` opposite, the other `w', w''`), so no choice can fail
//! and the builder never backtracks.
//!
//! The result is still traced and verified before it is returned.

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{verify_quadrangulation, EmbeddingError, RotationSystem, VerificationReport};
use crate::graph::{Graph, GraphError, Vertex};
use crate::interlace::{interlacement, InterlaceError};
use crate::recipe::SpineRecipe;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Interlace(#[from] InterlaceError),
    #[error(transparent)]
    Recipe(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(
        "construction exhausted: the built embedding failed verification \
         (genus {genus}, expected {expected}, {failures} failures); a spinal \
         quadrangulation always exists, so this is a bug"
    )]
    ConstructionFailed { genus: usize, expected: usize, failures: usize },
}

/// A face of `G[:]` as its four corners in traversal order.
pub type Quad = [Vertex; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// The first spanning-tree edge: `K2[:]`, a 4-cycle on the sphere.
    Seed {
        u: Vertex,
        v: Vertex,
    },
    Leaf {
        parent: Vertex,
        leaf: Vertex,
    },
    Chord {
        u: Vertex,
        v: Vertex,
    },
}

/// One edge insertion. Faces use the labels of the full `G[:]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub consumed: Vec<Quad>,
    pub created: Vec<Quad>,
    /// Genus of the partial embedding after this step.
    pub genus: usize,
    /// Face count of the partial embedding after this step.
    pub faces: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EmbedderTrace {
    pub steps: Vec<EmbedStep>,
}

impl EmbedderTrace {
    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.steps.iter().map(|s| serde_json::to_string(s).unwrap() + "\n").collect()
    }
}

/// A partial embedding restricted to the spine vertices attached so far.
///
/// The spine vertices are relabeled `0..k` in attachment order so that the
/// partial `H[:]` is connected; `labels` maps each compact vertex back to
/// its vertex in the full `G[:]`.
#[derive(Debug, Clone)]
pub struct PartialEmbedding {
    pub rotation: RotationSystem,
    pub labels: Vec<Vertex>,
}

/// Incremental builder; see the module docs.
#[derive(Debug, Clone)]
pub struct SpinalBuilder {
    n: usize,
    rho: Vec<Vec<Vertex>>,
    /// `stamps[v][i]`: creation time of corner `(rho[v][i], rho[v][i + 1])`.
    stamps: Vec<Vec<u64>>,
    clock: u64,
    attached: Vec<Vertex>,
    plan: std::vec::IntoIter<StepKind>,
    genus: usize,
    faces: usize,
}

impl SpinalBuilder {
    pub fn new(spine: &Graph) -> Result<Self, EmbedError> {
        interlacement(spine)?;
        let tree = spine.bfs_tree(0);
        let mut plan = Vec::with_capacity(spine.edge_count());
        let (root, first) = tree[0];
        plan.push(StepKind::Seed { u: root, v: first });
        plan.extend(tree[1..].iter().map(|&(parent, leaf)| StepKind::Leaf { parent, leaf }));
        plan.extend(spine.non_tree_edges().into_iter().map(|(u, v)| StepKind::Chord { u, v }));
        let n = spine.vertex_count();
        Ok(SpinalBuilder {
            n,
            rho: vec![Vec::new(); n],
            stamps: vec![Vec::new(); n],
            clock: 0,
            attached: Vec::with_capacity(n),
            plan: plan.into_iter(),
            genus: 0,
            faces: 0,
        })
    }

    /// Face of `G[:]` at corner `i` of `v`.
    fn corner_face(&self, v: Vertex, i: usize) -> Quad {
        let r = &self.rho[v];
        let (a, b) = (r[i], r[(i + 1) % r.len()]);
        [v, b, v + self.n, a + self.n]
    }

    fn tick(&mut self) -> u64 {
        self.clock += 1;
        self.clock
    }

    /// Adds `x` to `rho(v)` at the oldest corner; returns (consumed, created).
    fn insert(&mut self, v: Vertex, x: Vertex) -> (Vec<Quad>, Vec<Quad>) {
        if self.rho[v].is_empty() {
            let t = self.tick();
            self.rho[v].push(x);
            self.stamps[v].push(t);
            return (Vec::new(), vec![self.corner_face(v, 0)]);
        }
        let i = (0..self.stamps[v].len()).min_by_key(|&i| self.stamps[v][i]).unwrap();
        let consumed = self.corner_face(v, i);
        let (t1, t2) = (self.tick(), self.tick());
        self.rho[v].insert(i + 1, x);
        self.stamps[v][i] = t1;
        self.stamps[v].insert(i + 1, t2);
        (vec![consumed], vec![self.corner_face(v, i), self.corner_face(v, i + 1)])
    }

    /// Performs the next edge insertion, or returns `None` when done.
    pub fn step(&mut self) -> Option<EmbedStep> {
        let kind = self.plan.next()?;
        let (mut consumed, mut created) = (Vec::new(), Vec::new());
        let mut apply = |b: &mut Self, v, x| {
            let (c, k) = b.insert(v, x);
            consumed.extend(c);
            created.extend(k);
        };
        match kind {
            StepKind::Seed { u, v } => {
                apply(self, u, v);
                apply(self, v, u);
                self.attached.extend([u, v]);
            }
            StepKind::Leaf { parent, leaf } => {
                apply(self, parent, leaf);
                apply(self, leaf, parent);
                self.attached.push(leaf);
            }
            StepKind::Chord { u, v } => {
                apply(self, u, v);
                apply(self, v, u);
                self.genus += 1;
            }
        }
        self.faces = self.faces + created.len() - consumed.len();
        Some(EmbedStep { kind, consumed, created, genus: self.genus, faces: self.faces })
    }

    fn interlaced_rotation(&self, v: Vertex, relabel: impl Fn(Vertex) -> Vertex, k: usize) -> [Vec<Vertex>; 2] {
        let prime: Vec<Vertex> = self.rho[v].iter().flat_map(|&w| [relabel(w), relabel(w) + k]).collect();
        let double: Vec<Vertex> = prime.iter().rev().copied().collect();
        [prime, double]
    }

    fn rotation_for(&self, vertices: &[Vertex], relabel: impl Fn(Vertex) -> Vertex + Copy) -> RotationSystem {
        let k = vertices.len();
        let mut rotations = vec![Vec::new(); 2 * k];
        for &v in vertices {
            let [p, d] = self.interlaced_rotation(v, relabel, k);
            rotations[relabel(v)] = p;
            rotations[relabel(v) + k] = d;
        }
        RotationSystem::from_rotations(rotations).expect("builder rotations are consistent")
    }

    /// The embedding of `H[:]` for the spine edges inserted so far.
    pub fn snapshot(&self) -> PartialEmbedding {
        let k = self.attached.len();
        let mut compact = vec![usize::MAX; self.n];
        for (i, &v) in self.attached.iter().enumerate() {
            compact[v] = i;
        }
        let rotation = self.rotation_for(&self.attached, |v| compact[v]);
        let labels = (0..2 * k).map(|i| if i < k { self.attached[i] } else { self.attached[i - k] + self.n }).collect();
        PartialEmbedding { rotation, labels }
    }

    /// Runs the remaining steps and returns the rotation system of `G[:]`.
    pub fn finish(mut self) -> RotationSystem {
        while self.step().is_some() {}
        let all: Vec<Vertex> = (0..self.n).collect();
        self.rotation_for(&all, |v| v)
    }
}

fn check(rs: &RotationSystem, expected: usize) -> Result<VerificationReport, EmbedError> {
    let report = verify_quadrangulation(rs, Some(expected))?;
    if !report.passed() {
        return Err(EmbedError::ConstructionFailed { genus: report.genus, expected, failures: report.failures.len() });
    }
    Ok(report)
}

/// A verified quadrangulation of `spine[:]` with genus `beta(spine)`.
pub fn embed_interlacement(spine: &Graph) -> Result<RotationSystem, EmbedError> {
    let rs = SpinalBuilder::new(spine)?.finish();
    check(&rs, spine.betti()?)?;
    Ok(rs)
}

/// [`embed_interlacement`] together with the per-step construction log.
pub fn embed_interlacement_traced(spine: &Graph) -> Result<(RotationSystem, EmbedderTrace), EmbedError> {
    let mut builder = SpinalBuilder::new(spine)?;
    let mut trace = EmbedderTrace::default();
    while let Some(step) = builder.step() {
        trace.steps.push(step);
    }
    let rs = builder.finish();
    check(&rs, spine.betti()?)?;
    Ok((rs, trace))
}

/// Materializes the recipe and embeds the interlacement of the result.
pub fn embed_spine_family(recipe: &SpineRecipe) -> Result<RotationSystem, EmbedError> {
    embed_interlacement(&recipe.materialize()?)
}

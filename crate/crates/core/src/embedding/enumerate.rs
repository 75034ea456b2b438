//! Brute-force enumeration of rotation systems.
//!
//! Rotations are normalized to start at the smallest neighbor, so a vertex
//! of degree `d` has `(d - 1)!` choices. Reversing every rotation gives the
//! mirror embedding, which has the same faces traversed backwards; to count
//! each mirror pair once, the *anchor* (lowest-index vertex of degree at
//! least 3) only takes rotations whose second entry is smaller than its
//! last. The backtracking searcher uses the same convention.

use super::{is_simple_quadrangulation, trace_faces, EmbeddingError, FaceSet, RotationSystem};
use crate::corpus::permutations;
use crate::graph::{Graph, Vertex};
use crate::par::Execution;

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Upper bound on the number of rotation systems an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget(pub u128);

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget(DEFAULT_ENUMERATION_BUDGET)
    }
}

/// Lowest-index vertex of degree at least 3.
pub fn anchor_vertex(g: &Graph) -> Option<Vertex> {
    (0..g.vertex_count()).find(|&v| g.degree(v) >= 3)
}

/// The admissible rotations at `v`, in lexicographic order.
pub fn rotation_choices(g: &Graph, v: Vertex) -> Vec<Vec<Vertex>> {
    let ns = g.neighbors(v);
    let Some((&first, rest)) = ns.split_first() else {
        return vec![Vec::new()];
    };
    let anchor = anchor_vertex(g) == Some(v);
    permutations(rest.len())
        .into_iter()
        .map(|p| std::iter::once(first).chain(p.iter().map(|&i| rest[i])).collect::<Vec<_>>())
        .filter(|r| !anchor || r[1] < r[r.len() - 1])
        .collect()
}

/// Number of rotation systems visited by a full enumeration, saturating at
/// `u128::MAX`.
pub fn rotation_space_size(g: &Graph) -> u128 {
    let mut size: u128 = 1;
    for v in 0..g.vertex_count() {
        for k in 2..g.degree(v) as u128 {
            size = size.saturating_mul(k);
        }
    }
    if anchor_vertex(g).is_some() && size != u128::MAX {
        size /= 2;
    }
    size
}

/// Iterator over every rotation system of a graph (mirror pairs counted
/// once), lexicographic in `(rotation(0), rotation(1), ...)`.
pub struct Enumerator {
    graph: Graph,
    choices: Vec<Vec<Vec<Vertex>>>,
    counter: Vec<usize>,
    done: bool,
}

impl Enumerator {
    pub fn new(g: &Graph, budget: EnumerationBudget) -> Result<Self, EmbeddingError> {
        if g.edge_count() == 0 {
            return Err(EmbeddingError::NoEdges);
        }
        if !g.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let size = rotation_space_size(g);
        if size > budget.0 {
            return Err(EmbeddingError::BudgetExceeded { size, budget: budget.0 });
        }
        let choices: Vec<_> = (0..g.vertex_count()).map(|v| rotation_choices(g, v)).collect();
        Ok(Enumerator { graph: g.clone(), counter: vec![0; choices.len()], choices, done: false })
    }

    /// Restricts vertex `v` to its `index`-th rotation.
    fn fixed(mut self, v: Vertex, index: usize) -> Self {
        let only = self.choices[v][index].clone();
        self.choices[v] = vec![only];
        self
    }

    fn first_free_vertex(&self) -> Option<Vertex> {
        self.choices.iter().position(|c| c.len() > 1)
    }
}

impl Iterator for Enumerator {
    type Item = RotationSystem;

    fn next(&mut self) -> Option<RotationSystem> {
        if self.done {
            return None;
        }
        let rotations = self.counter.iter().enumerate().map(|(v, &i)| self.choices[v][i].clone()).collect();
        let item = RotationSystem::from_parts_unchecked(self.graph.clone(), rotations);
        // odometer, last vertex fastest
        self.done = true;
        for v in (0..self.counter.len()).rev() {
            self.counter[v] += 1;
            if self.counter[v] < self.choices[v].len() {
                self.done = false;
                break;
            }
            self.counter[v] = 0;
        }
        Some(item)
    }
}

/// Every rotation system of `g` whose traced faces satisfy `keep`.
pub fn enumerate_embeddings<F>(
    g: &Graph,
    budget: EnumerationBudget,
    keep: F,
) -> Result<impl Iterator<Item = RotationSystem>, EmbeddingError>
where
    F: Fn(&FaceSet) -> bool,
{
    Ok(Enumerator::new(g, budget)?.filter(move |rs| keep(&trace_faces(rs).expect("enumerated graphs are connected"))))
}

fn collect_with<F>(
    g: &Graph,
    budget: EnumerationBudget,
    keep: F,
    exec: Execution,
) -> Result<Vec<RotationSystem>, EmbeddingError>
where
    F: Fn(&RotationSystem) -> bool + Sync + Send,
{
    let base = Enumerator::new(g, budget)?;
    let Some(v) = base.first_free_vertex() else {
        return Ok(base.filter(|rs| keep(rs)).collect());
    };
    let branches: Vec<usize> = (0..base.choices[v].len()).collect();
    let base = &base;
    let keep = &keep;
    Ok(exec.flat_map(branches, move |i| {
        let sub = Enumerator {
            graph: base.graph.clone(),
            choices: base.choices.clone(),
            counter: base.counter.clone(),
            done: false,
        }
        .fixed(v, i);
        sub.filter(|rs| keep(rs)).collect()
    }))
}

/// Like [`enumerate_embeddings`], collected, with the work split by the
/// rotation of the first vertex that has a choice. Output order is the
/// same as the sequential iterator's.
pub fn collect_embeddings<F>(
    g: &Graph,
    budget: EnumerationBudget,
    keep: F,
    exec: Execution,
) -> Result<Vec<RotationSystem>, EmbeddingError>
where
    F: Fn(&FaceSet) -> bool + Sync + Send,
{
    collect_with(g, budget, |rs| keep(&trace_faces(rs).expect("connected")), exec)
}

/// All rotation systems of `g` in which every face is a simple 4-cycle.
pub fn quadrangulations(
    g: &Graph,
    budget: EnumerationBudget,
    exec: Execution,
) -> Result<Vec<RotationSystem>, EmbeddingError> {
    collect_with(g, budget, is_simple_quadrangulation, exec)
}

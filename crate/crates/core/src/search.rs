//! Backtracking search for quadrilateral embeddings of arbitrary graphs.
//!
//! Rotations are assigned vertex by vertex in decreasing-degree order
//! (ties by index), and within a vertex one successor at a time, starting
//! from the smallest neighbor. Every new successor joins two arcs of some
//! face; the partial face through it is walked in both directions and the
//! branch is cut as soon as that face cannot become a 4-cycle on four
//! distinct vertices. Mirror images are factored out with the same anchor
//! convention as the enumerator, so the solution sets of the two agree.
//!
//! In a quadrangulation `4F = 2E`, so Euler's formula fixes the genus:
//! `E = 2(V + 2g - 2)`. Graphs failing that identity are rejected without
//! searching.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::embedding::{anchor_vertex, rotation_choices, RotationSystem};
use crate::graph::{Graph, Vertex};
use crate::par::Execution;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {nodes} nodes (budget {budget})")]
    BudgetExhausted { nodes: u64, budget: u64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Maximum number of successor assignments, summed over all workers.
    pub node_budget: u64,
    pub execution: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: DEFAULT_SEARCH_BUDGET, execution: Execution::default() }
    }
}

/// Genus of any quadrangulation with this many vertices and edges, if the
/// counts allow one at all.
pub fn quadrangulation_genus(vertices: usize, edges: usize) -> Option<usize> {
    // E = 2V + 4g - 4
    let four_g = (edges + 4).checked_sub(2 * vertices)?;
    (four_g % 4 == 0).then_some(four_g / 4)
}

/// A quadrangulation of `g` with exactly `target_genus` handles.
///
/// `Ok(None)` means proven absence (by the Euler identity or exhaustive
/// search); running out of budget is an error.
pub fn search_quad_embedding(
    g: &Graph,
    target_genus: usize,
    config: SearchConfig,
) -> Result<Option<RotationSystem>, SearchError> {
    validate(g)?;
    if quadrangulation_genus(g.vertex_count(), g.edge_count()) != Some(target_genus) {
        return Ok(None);
    }
    let search = Search::new(g);
    let budget = Budget::new(config.node_budget);
    let found = config.execution.find_map_first(search.branches(), |branch| {
        let mut state = search.state(&budget);
        let mut out = None;
        let r = state.run_branch(&branch, &mut |rs| {
            out = Some(rs);
            false
        });
        match r {
            Err(e) => Some(Err(e)),
            Ok(()) => out.map(Ok),
        }
    });
    found.transpose()
}

/// Every quadrangulation of `g` (one of each mirror pair), sorted.
pub fn all_quad_embeddings(g: &Graph, config: SearchConfig) -> Result<Vec<RotationSystem>, SearchError> {
    validate(g)?;
    if quadrangulation_genus(g.vertex_count(), g.edge_count()).is_none() {
        return Ok(Vec::new());
    }
    let search = Search::new(g);
    let budget = Budget::new(config.node_budget);
    let per_branch = config.execution.map(search.branches(), |branch| {
        let mut state = search.state(&budget);
        let mut out = Vec::new();
        state
            .run_branch(&branch, &mut |rs| {
                out.push(rs);
                true
            })
            .map(|()| out)
    });
    let mut all = Vec::new();
    for r in per_branch {
        all.extend(r?);
    }
    all.sort();
    Ok(all)
}

fn validate(g: &Graph) -> Result<(), SearchError> {
    if g.edge_count() == 0 {
        return Err(SearchError::NoEdges);
    }
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    Ok(())
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { used: AtomicU64::new(0), limit }
    }

    fn charge(&self, nodes: u64) -> Result<(), SearchError> {
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if used > self.limit {
            Err(SearchError::BudgetExhausted { nodes: used, budget: self.limit })
        } else {
            Ok(())
        }
    }
}

const CHARGE_BATCH: u64 = 4096;

/// Immutable search tables shared by all workers.
struct Search<'g> {
    g: &'g Graph,
    order: Vec<Vertex>,
    anchor: Option<Vertex>,
    /// `rev[u][i]`: position of `u` in the adjacency of its `i`-th neighbor.
    rev: Vec<Vec<usize>>,
}

/// A local successor index, `NONE` when unset.
const NONE: usize = usize::MAX;

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let mut order: Vec<Vertex> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let rev = (0..n)
            .map(|u| g.neighbors(u).iter().map(|&v| g.neighbors(v).binary_search(&u).unwrap()).collect())
            .collect();
        Search { g, order, anchor: anchor_vertex(g), rev }
    }

    /// Top-level branches: every admissible rotation of the first vertex.
    fn branches(&self) -> Vec<Vec<Vertex>> {
        rotation_choices(self.g, self.order[0])
    }

    fn state<'s>(&'s self, budget: &'s Budget) -> State<'s, 'g> {
        let g = self.g;
        State {
            s: self,
            budget,
            pending: 0,
            succ: (0..g.vertex_count()).map(|v| vec![NONE; g.degree(v)]).collect(),
            pred: (0..g.vertex_count()).map(|v| vec![NONE; g.degree(v)]).collect(),
            used: (0..g.vertex_count()).map(|v| vec![false; g.degree(v)]).collect(),
        }
    }
}

struct State<'s, 'g> {
    s: &'s Search<'g>,
    budget: &'s Budget,
    pending: u64,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

/// An arc `v -> adj(v)[i]`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Arc {
    v: Vertex,
    i: usize,
}

impl State<'_, '_> {
    fn head(&self, a: Arc) -> Vertex {
        self.s.g.neighbors(a.v)[a.i]
    }

    fn next_arc(&self, a: Arc) -> Option<Arc> {
        let w = self.head(a);
        let j = self.s.rev[a.v][a.i];
        let k = self.succ[w][j];
        (k != NONE).then_some(Arc { v: w, i: k })
    }

    fn prev_arc(&self, a: Arc) -> Option<Arc> {
        let t = self.pred[a.v][a.i];
        (t != NONE).then(|| Arc { v: self.s.g.neighbors(a.v)[t], i: self.s.rev[a.v][t] })
    }

    /// Can the face through the transition `(u -> v) -> (v -> w)` still
    /// become a simple quadrilateral? (`a`, `b`: positions of `u`, `w` at `v`.)
    fn face_ok(&self, v: Vertex, a: usize, b: usize) -> bool {
        let into = Arc { v: self.s.g.neighbors(v)[a], i: self.s.rev[v][a] };
        let mut chain = [into; 4];
        let mut len = 1;
        // forward from the new arc v -> w
        let mut cur = Arc { v, i: b };
        let mut closed = false;
        loop {
            if cur == into {
                closed = true;
                break;
            }
            if len == 4 {
                return false;
            }
            chain[len] = cur;
            len += 1;
            match self.next_arc(cur) {
                Some(n) => cur = n,
                None => break,
            }
        }
        if closed {
            return len == 4 && distinct(chain[..4].iter().map(|a| a.v));
        }
        // backward from u -> v; prepend
        let mut back = self.prev_arc(into);
        while let Some(p) = back {
            if len == 4 {
                return false;
            }
            chain.copy_within(0..len, 1);
            chain[0] = p;
            len += 1;
            back = self.prev_arc(p);
        }
        let last_head = self.head(chain[len - 1]);
        match len {
            4 => distinct(chain[..4].iter().map(|a| a.v)) && last_head == chain[0].v,
            _ => distinct(chain[..len].iter().map(|a| a.v).chain([last_head])),
        }
    }

    fn set(&mut self, v: Vertex, a: usize, b: usize) -> bool {
        self.succ[v][a] = b;
        self.pred[v][b] = a;
        self.used[v][b] = true;
        self.face_ok(v, a, b)
    }

    fn unset(&mut self, v: Vertex, a: usize, b: usize) {
        self.succ[v][a] = NONE;
        self.pred[v][b] = NONE;
        self.used[v][b] = false;
    }

    fn charge(&mut self) -> Result<(), SearchError> {
        self.pending += 1;
        if self.pending == CHARGE_BATCH {
            self.pending = 0;
            self.budget.charge(CHARGE_BATCH)?;
        }
        Ok(())
    }

    /// Fixes the first vertex's rotation, then explores the rest.
    fn run_branch(
        &mut self,
        rotation: &[Vertex],
        emit: &mut dyn FnMut(RotationSystem) -> bool,
    ) -> Result<(), SearchError> {
        let v = self.s.order[0];
        let ns = self.s.g.neighbors(v);
        let idx: Vec<usize> = rotation.iter().map(|x| ns.binary_search(x).unwrap()).collect();
        let d = idx.len();
        for k in 0..d {
            if !self.set(v, idx[k], idx[(k + 1) % d]) {
                return Ok(());
            }
        }
        self.vertex(1, emit).map(|_| ())?;
        self.budget.charge(self.pending)
    }

    /// Returns `Ok(false)` once `emit` asks to stop.
    fn vertex(&mut self, pos: usize, emit: &mut dyn FnMut(RotationSystem) -> bool) -> Result<bool, SearchError> {
        let Some(&v) = self.s.order.get(pos) else {
            return Ok(emit(self.rotation_system()));
        };
        match self.s.g.degree(v) {
            0 => self.vertex(pos + 1, emit),
            d => {
                self.used[v][0] = true;
                let r = self.extend(pos, v, 0, 1, d, NONE, emit);
                self.used[v][0] = false;
                r
            }
        }
    }

    /// Chooses the successor of position `cur` at `v`, `placed` entries in.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        pos: usize,
        v: Vertex,
        cur: usize,
        placed: usize,
        d: usize,
        second: usize,
        emit: &mut dyn FnMut(RotationSystem) -> bool,
    ) -> Result<bool, SearchError> {
        if placed == d {
            // close the cycle back to position 0
            if self.s.anchor == Some(v) && d >= 3 && second >= cur {
                return Ok(true);
            }
            self.charge()?;
            let ok = self.set(v, cur, 0);
            let go = if ok { self.vertex(pos + 1, emit)? } else { true };
            self.unset(v, cur, 0);
            self.used[v][0] = true;
            return Ok(go);
        }
        for b in 1..d {
            if self.used[v][b] {
                continue;
            }
            self.charge()?;
            let ok = self.set(v, cur, b);
            let go = if ok {
                let second = if placed == 1 { b } else { second };
                self.extend(pos, v, b, placed + 1, d, second, emit)?
            } else {
                true
            };
            self.unset(v, cur, b);
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rotation_system(&self) -> RotationSystem {
        let g = self.s.g;
        let rotations = (0..g.vertex_count())
            .map(|v| {
                let ns = g.neighbors(v);
                let mut r = Vec::with_capacity(ns.len());
                let mut i = 0;
                for _ in 0..ns.len() {
                    r.push(ns[i]);
                    i = self.succ[v][i];
                }
                r
            })
            .collect();
        RotationSystem::from_parts_unchecked(g.clone(), rotations)
    }
}

fn distinct(it: impl Iterator<Item = Vertex>) -> bool {
    let mut seen = [usize::MAX; 6];
    for (k, x) in it.enumerate() {
        if seen[..k].contains(&x) {
            return false;
        }
        seen[k] = x;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{quadrangulations, verify_quadrangulation, EnumerationBudget};
    use crate::graph::{complete_graph, cycle_graph};
    use crate::interlace::interlacement;

    #[test]
    fn euler_identity() {
        assert_eq!(quadrangulation_genus(5, 10), Some(1));
        assert_eq!(quadrangulation_genus(4, 4), Some(0));
        assert_eq!(quadrangulation_genus(4, 6), None);
        assert_eq!(quadrangulation_genus(4, 8), Some(1));
        assert_eq!(quadrangulation_genus(7, 18), Some(2));
        assert_eq!(quadrangulation_genus(24, 264), Some(55));
        assert_eq!(quadrangulation_genus(10, 2), None);
    }

    #[test]
    fn k5_on_the_torus() {
        let k5 = complete_graph(5).unwrap();
        let rs = search_quad_embedding(&k5, 1, SearchConfig::default()).unwrap().unwrap();
        let report = verify_quadrangulation(&rs, Some(1)).unwrap();
        assert!(report.passed());
        assert_eq!(report.faces, 5);
        assert_eq!(search_quad_embedding(&k5, 0, SearchConfig::default()), Ok(None));
    }

    #[test]
    fn k4_has_none() {
        let k4 = complete_graph(4).unwrap();
        for genus in 0..3 {
            assert_eq!(search_quad_embedding(&k4, genus, SearchConfig::default()), Ok(None));
        }
        assert_eq!(all_quad_embeddings(&k4, SearchConfig::default()), Ok(vec![]));
    }

    #[test]
    fn c4_sphere() {
        let rs = search_quad_embedding(&cycle_graph(4).unwrap(), 0, SearchConfig::default()).unwrap().unwrap();
        assert_eq!(verify_quadrangulation(&rs, Some(0)).unwrap().faces, 2);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let octa = interlacement(&complete_graph(3).unwrap()).unwrap().into_graph();
        let tiny = SearchConfig { node_budget: 10, execution: Execution::Sequential };
        assert!(matches!(all_quad_embeddings(&octa, tiny), Err(SearchError::BudgetExhausted { .. })));
    }

    #[test]
    fn matches_enumeration_on_small_cases() {
        for g in [
            complete_graph(5).unwrap(),
            interlacement(&complete_graph(3).unwrap()).unwrap().into_graph(),
            cycle_graph(4).unwrap(),
        ] {
            let mut by_enum = quadrangulations(&g, EnumerationBudget::default(), Execution::Parallel).unwrap();
            by_enum.sort();
            let by_search = all_quad_embeddings(&g, SearchConfig::default()).unwrap();
            assert!(!by_search.is_empty());
            assert_eq!(by_search, by_enum, "{g:?}");
        }
    }

    #[test]
    fn first_solution_is_deterministic() {
        let k5 = complete_graph(5).unwrap();
        let seq = SearchConfig { execution: Execution::Sequential, ..SearchConfig::default() };
        let a = search_quad_embedding(&k5, 1, seq).unwrap();
        let b = search_quad_embedding(&k5, 1, SearchConfig::default()).unwrap();
        assert_eq!(a, b);
    }
}

//! Simple undirected graphs on dense `0..n` vertex labels.
//!
//! Every graph in the crate (spines, interlacements, ladders, search
//! inputs) is a [`Graph`]. Adjacency lists are kept sorted so that every
//! traversal, and therefore every derived object, is deterministic.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

/// An undirected edge stored with `u < v`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a loop")]
    Loop(Vertex, Vertex),
    #[error("edge ({0}, {1}) appears more than once")]
    MultiEdge(Vertex, Vertex),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("cannot delete {requested} edges while staying connected: cycle rank is {betti}")]
    TooManyDeletions { requested: usize, betti: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("a ladder with {0} rungs needs a glue edge")]
    MissingGlueEdge(usize),
}

/// A labeled simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    /// Edges may be given in either orientation.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(GraphError::OutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::Loop(u, v));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::MultiEdge(u.min(v), u.max(v))),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let i = self.adj.get(u).and_then(|a| a.binary_search(&v).ok());
        let j = self.adj.get(v).and_then(|a| a.binary_search(&u).ok());
        match (i, j) {
            (Some(i), Some(j)) => {
                self.adj[u].remove(i);
                self.adj[v].remove(j);
                self.edge_count -= 1;
                Ok(())
            }
            _ => Err(GraphError::MissingEdge(u.min(v), u.max(v))),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// True iff the graph has exactly one connected component.
    /// The graph on zero vertices counts as disconnected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n > 0 && self.bfs_tree(0).len() + 1 == n
    }

    /// Breadth-first tree edges `(parent, child)` from `root`, visiting
    /// neighbors lowest index first. Edges appear in discovery order.
    pub fn bfs_tree(&self, root: Vertex) -> Vec<Edge> {
        let mut seen = vec![false; self.vertex_count()];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    tree.push((u, v));
                    queue.push_back(v);
                }
            }
        }
        tree
    }

    /// First Betti number `|E| - |V| + 1` of a connected graph.
    pub fn betti(&self) -> Result<usize, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edge_count + 1 - self.vertex_count())
    }

    /// Removes `m` edges without disconnecting the graph.
    ///
    /// A breadth-first spanning tree from vertex 0 is kept intact and the
    /// first `m` non-tree edges in lexicographic order are removed.
    pub fn delete_edges_keep_connected(&self, m: usize) -> Result<Graph, GraphError> {
        let betti = self.betti()?;
        if m > betti {
            return Err(GraphError::TooManyDeletions { requested: m, betti });
        }
        let mut out = self.clone();
        for (u, v) in self.non_tree_edges().into_iter().take(m) {
            out.remove_edge(u, v)?;
        }
        Ok(out)
    }

    /// Non-tree edges relative to [`Graph::bfs_tree`] from vertex 0, sorted.
    pub fn non_tree_edges(&self) -> Vec<Edge> {
        let mut tree: Vec<Edge> = self.bfs_tree(0).into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        tree.sort_unstable();
        self.edges().filter(|e| tree.binary_search(e).is_err()).collect()
    }

    /// Returns a copy with the given edges removed.
    pub fn without_edges(&self, edges: &[Edge]) -> Result<Graph, GraphError> {
        let mut out = self.clone();
        for &(u, v) in edges {
            out.remove_edge(u, v)?;
        }
        Ok(out)
    }

    /// Glues the ladder `L_k` onto `base` by identifying one end rung of the
    /// ladder with `base_edge`.
    ///
    /// Ladder vertex `0` becomes the smaller endpoint of `base_edge` and
    /// ladder vertex `k` the larger one; the remaining ladder vertices are
    /// appended in ladder order (`1..k`, then `k+1..2k`).
    pub fn glue_ladder(&self, base_edge: Edge, k: usize) -> Result<Graph, GraphError> {
        if k < 2 {
            return Err(GraphError::TooSmall { what: "ladder length", min: 2, got: k });
        }
        let (x, y) = (base_edge.0.min(base_edge.1), base_edge.0.max(base_edge.1));
        if !self.has_edge(x, y) {
            return Err(GraphError::MissingEdge(x, y));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let base_n = self.vertex_count();
        let map = |lv: Vertex| -> Vertex {
            match lv {
                0 => x,
                _ if lv == k => y,
                _ if lv < k => base_n + lv - 1,
                _ => base_n + lv - 2,
            }
        };
        let ladder = ladder_graph(k)?;
        let mut out = self.clone();
        out.adj.resize(base_n + 2 * k - 2, Vec::new());
        for (a, b) in ladder.edges() {
            if (a, b) == (0, k) {
                continue;
            }
            out.add_edge(map(a), map(b))?;
        }
        Ok(out)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let mut out = Graph::empty(self.vertex_count());
        for (u, v) in self.edges() {
            out.add_edge(perm[u], perm[v]).expect("permutation of a simple graph is simple");
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.vertex_count())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { what: "complete graph order", min: 1, got: 0 });
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The ladder `L_k = P_k x P_1`: rails `0..k` and `k..2k`, rungs `(i, k + i)`.
pub fn ladder_graph(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::TooSmall { what: "ladder length", min: 1, got: 0 });
    }
    let rails = (0..k - 1).flat_map(|i| [(i, i + 1), (k + i, k + i + 1)]);
    let rungs = (0..k).map(|i| (i, k + i));
    Graph::from_edges(2 * k, rails.chain(rungs))
}

/// The path on `n` vertices.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { what: "path order", min: 1, got: 0 });
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// The cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { what: "cycle order", min: 3, got: n });
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `(n - 1)(n - 2) / 2`, the cycle rank of `K_n` (zero for `n <= 2`).
pub fn complete_betti(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        (n - 1) * (n - 2) / 2
    }
}

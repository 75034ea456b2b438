//! Isomorph-free generation of small connected graphs.
//!
//! A labeled graph on `n` vertices is encoded as a bitmask over the
//! `n(n-1)/2` vertex pairs. Each isomorphism class is represented by the
//! numerically smallest mask in its orbit under vertex permutations; a mask
//! is rejected as soon as one permutation produces a smaller image, so the
//! full orbit is only walked for the representatives themselves.

use crate::graph::Graph;
use crate::par::Execution;

/// Largest order supported by [`connected_graphs`].
pub const MAX_CORPUS_ORDER: usize = 7;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

#[allow(clippy::needless_range_loop)]
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = k;
            idx[v][u] = k;
            k += 1;
        }
    }
    idx
}

fn mask_to_graph(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> k & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("mask encodes a simple graph")
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` vertices (`1 <= n <= 7`), in increasing mask order.
///
/// Counts are 1, 1, 2, 6, 21, 112, 853.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    connected_graphs_with(n, Execution::default())
}

pub fn connected_graphs_with(n: usize, exec: Execution) -> Vec<Graph> {
    assert!((1..=MAX_CORPUS_ORDER).contains(&n), "corpus order must be in 1..=7");
    let pairs = n * (n - 1) / 2;
    let idx = pair_index(n);
    // each permutation as a map on pair indices
    let pair_maps: Vec<Vec<u32>> = permutations(n)
        .into_iter()
        .skip(1)
        .map(|p| {
            let mut map = vec![0u32; pairs];
            for u in 0..n {
                for v in u + 1..n {
                    map[idx[u][v]] = idx[p[u]][p[v]] as u32;
                }
            }
            map
        })
        .collect();
    let is_canonical = |mask: u32| {
        pair_maps.iter().all(|map| {
            let mut image = 0u32;
            let mut bits = mask;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                image |= 1 << map[k];
                bits &= bits - 1;
            }
            image >= mask
        })
    };
    let masks: Vec<u32> = (0..1u32 << pairs).collect();
    let chunks: Vec<Vec<u32>> = masks.chunks(1 << 12).map(<[u32]>::to_vec).collect();
    exec.flat_map(chunks, |chunk| {
        chunk
            .into_iter()
            .filter(|&m| m.count_ones() as usize + 1 >= n && is_canonical(m))
            .map(|m| mask_to_graph(n, m))
            .filter(Graph::is_connected)
            .collect()
    })
}

/// Connected graphs with `lo..=hi` vertices, grouped by order.
pub fn connected_graphs_range(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(connected_graphs).collect()
}

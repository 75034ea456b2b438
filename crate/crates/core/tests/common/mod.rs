#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinal_core::graph::{Edge, Graph};

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<Edge> = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Chromatic number by trying every coloring with k colors, k = 1, 2, ...
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    let edges: Vec<Edge> = g.edges().collect();
    (1..=n)
        .find(|&k| {
            let total = (k as u64).pow(n as u32);
            (0..total).any(|mut code| {
                let mut color = vec![0; n];
                for c in color.iter_mut() {
                    *c = code % k as u64;
                    code /= k as u64;
                }
                edges.iter().all(|&(u, v)| color[u] != color[v])
            })
        })
        .unwrap_or(0)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Smallest `n` with `k n - a >= 0` and `(k n - a)^2 >= d`, that is
/// `ceil((a + sqrt d) / k)`, found by counting up.
fn ceil_by_search(a: i64, d: i64, k: i64) -> i64 {
    let d = big(d);
    (0..).find(|&n| k * n - a >= 0 && big(k * n - a).pow(2) >= d).unwrap()
}

/// Largest `n` with `k n - a < 0` or `(k n - a)^2 <= d`, that is
/// `floor((a + sqrt d) / k)`.
fn floor_by_search(a: i64, d: i64, k: i64) -> i64 {
    let d = big(d);
    let fits = |n: i64| k * n - a < 0 || big(k * n - a).pow(2) <= d;
    let mut n = 0;
    while fits(n + 1) {
        n += 1;
    }
    n
}

pub fn oracle_lower_bound(g: u64) -> u64 {
    if g == 0 {
        return 4;
    }
    ceil_by_search(5, 32 * g as i64 - 7, 2) as u64
}

pub fn oracle_spinal(g: u64) -> u64 {
    2 * ceil_by_search(3, 8 * g as i64 + 1, 2) as u64
}

pub fn oracle_max_chromatic(g: u64) -> u64 {
    let beta = |n: u64| (n - 1) * (n - 2) / 2;
    let mut n = 2;
    while beta(n + 1) <= g {
        n += 1;
    }
    n
}

pub fn oracle_exact_order(g: u64) -> Option<u64> {
    let a = ceil_by_search(3, 8 * g as i64 + 1, 2);
    let b = floor_by_search(7, 32 * g as i64 - 15, 4);
    (a == b).then_some(2 * a as u64)
}

//! Seeded generators of pipeline-shaped inputs for integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rigidcert::graph::{graph6_encode, is_k_connected, min_degree, Graph};

/// A random graph on `n` vertices with exactly `m` edges, minimum degree 4
/// and 2-connected, optionally containing a `K5` on 5 random vertices.
pub fn random_candidate<R: Rng>(n: usize, m: usize, plant_k5: bool, rng: &mut R) -> Graph {
    loop {
        let mut adj = vec![vec![false; n]; n];
        let mut deg = vec![0usize; n];
        let mut edges = 0;
        let add = |a: usize, b: usize, adj: &mut Vec<Vec<bool>>, deg: &mut Vec<usize>| {
            if a != b && !adj[a][b] {
                adj[a][b] = true;
                adj[b][a] = true;
                deg[a] += 1;
                deg[b] += 1;
                true
            } else {
                false
            }
        };
        if plant_k5 {
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            for i in 0..5 {
                for j in i + 1..5 {
                    add(vs[i], vs[j], &mut adj, &mut deg);
                    edges += 1;
                }
            }
        }
        while edges < m {
            let low = *deg.iter().min().unwrap();
            let u = if low < 4 {
                let lows: Vec<usize> = (0..n).filter(|&v| deg[v] == low).collect();
                *lows.choose(rng).unwrap()
            } else {
                rng.gen_range(0..n)
            };
            let options: Vec<usize> = (0..n).filter(|&v| v != u && !adj[u][v]).collect();
            let Some(&v) = options.choose(rng) else { break };
            if add(u, v, &mut adj, &mut deg) {
                edges += 1;
            }
        }
        let list: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| adj[a][b]).collect();
        let g = Graph::new(n, list).unwrap();
        if g.edge_count() == m && min_degree(&g) >= 4 && is_k_connected(&g, 2).unwrap() {
            return g;
        }
    }
}

pub fn candidate_lines<R: Rng>(orders: &[usize], count: usize, k5_every: usize, rng: &mut R) -> Vec<String> {
    (0..count)
        .map(|i| {
            let n = orders[i % orders.len()];
            graph6_encode(&random_candidate(n, 25, k5_every > 0 && i % k5_every == 0, rng)).unwrap()
        })
        .collect()
}

/// `K6` minus the matching `{01, 23}`, relabeled by `labels`.
fn k6_minus_matching(labels: [usize; 6]) -> Vec<(usize, usize)> {
    Graph::complete(6)
        .edges()
        .iter()
        .filter(|&&e| e != (0, 1) && e != (2, 3))
        .map(|&(a, b)| (labels[a].min(labels[b]), labels[a].max(labels[b])))
        .collect()
}

/// Two copies of `K6` minus a matching glued along an edge: ten vertices,
/// 25 edges, no `K5`, rank below 24 and a 2-vertex cut.
pub fn glued_dense_blocks() -> Graph {
    let mut edges = k6_minus_matching([0, 1, 2, 3, 4, 5]);
    edges.extend(k6_minus_matching([6, 7, 8, 9, 4, 5]).into_iter().filter(|&e| e != (4, 5)));
    Graph::new(10, edges).unwrap()
}

/// `K6` minus a matching next to `K5` minus an edge, joined by three edges:
/// eleven vertices, 25 edges, no `K5`.
pub fn dense_block_and_near_k5() -> Graph {
    let mut edges = k6_minus_matching([0, 1, 2, 3, 4, 5]);
    edges.extend(Graph::complete(5).edges().iter().filter(|&&e| e != (0, 1)).map(|&(a, b)| (a + 6, b + 6)));
    edges.extend([(0, 6), (2, 7), (4, 8)]);
    Graph::new(11, edges).unwrap()
}

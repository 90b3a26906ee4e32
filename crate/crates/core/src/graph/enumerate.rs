//! Isomorph-free enumeration of small graphs.
//!
//! Classes are grown one edge at a time: every class with `m + 1` edges is
//! some class with `m` edges plus one non-edge, so the canonical codes of all
//! one-edge extensions of level `m` cover level `m + 1` exactly. Output is
//! sorted by edge count, then canonical code. Larger instances must come from
//! an external generator.

use std::collections::BTreeSet;

use super::canon::canonical_code;
use super::{is_connected, is_k_connected, min_degree, Graph, GraphError};

pub const MAX_INTERNAL_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    Biconnected,
    Triconnected,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationFilter {
    pub edges: Option<usize>,
    pub min_degree: Option<usize>,
    pub connectivity: Option<Connectivity>,
}

impl EnumerationFilter {
    fn accepts(&self, g: &Graph) -> bool {
        if self.edges.is_some_and(|m| g.edge_count() != m) {
            return false;
        }
        if self.min_degree.is_some_and(|d| g.n() > 0 && min_degree(g) < d) {
            return false;
        }
        match self.connectivity {
            None => true,
            Some(Connectivity::Connected) => is_connected(g),
            Some(Connectivity::Biconnected) => is_k_connected(g, 2).unwrap_or(false),
            Some(Connectivity::Triconnected) => is_k_connected(g, 3).unwrap_or(false),
        }
    }
}

fn from_code(n: usize, code: u128) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for b in 1..n {
        for a in 0..b {
            if code >> (total - 1 - k) & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
            k += 1;
        }
    }
    Graph::from_adjacency(adj)
}

/// One representative (in canonical labeling) per isomorphism class of
/// graphs on `n` vertices passing `filter`.
pub fn enumerate_small(n: usize, filter: EnumerationFilter) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n > MAX_INTERNAL_VERTICES {
        return Err(GraphError::UseExternalGenerator(n));
    }
    let max_edges = n * n.saturating_sub(1) / 2;
    let top = filter.edges.unwrap_or(max_edges).min(max_edges);
    let mut out: Vec<Graph> = Vec::new();
    if filter.edges.is_some_and(|m| m > max_edges) {
        return Ok(out.into_iter());
    }

    let mut level: BTreeSet<u128> = BTreeSet::from([0]);
    for m in 0..=top {
        let graphs: Vec<Graph> = level.iter().map(|&c| from_code(n, c)).collect();
        out.extend(graphs.iter().filter(|g| filter.accepts(g)).cloned());
        if m == top {
            break;
        }
        let mut next = BTreeSet::new();
        for g in &graphs {
            for b in 1..n {
                for a in 0..b {
                    if !g.has_edge(a, b) {
                        let h = g.with_edge(a, b).expect("non-edge within range");
                        next.insert(canonical_code(&h));
                    }
                }
            }
        }
        level = next;
    }
    Ok(out.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form_bruteforce;

    fn count(n: usize, filter: EnumerationFilter) -> usize {
        enumerate_small(n, filter).unwrap().count()
    }

    /// Brute force: every labeled edge subset, deduplicated by the
    /// permutation-maximum canonical form.
    fn brute_force_classes(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
                canonical_form_bruteforce(&g).unwrap().edges().to_vec()
            })
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(4, EnumerationFilter::default()), 11);
        let connected = EnumerationFilter { connectivity: Some(Connectivity::Connected), ..Default::default() };
        assert_eq!(count(4, connected), 6);
        let triangle: Vec<Graph> = enumerate_small(3, EnumerationFilter { edges: Some(3), ..Default::default() }).unwrap().collect();
        assert_eq!(triangle, vec![Graph::complete(3)]);
    }

    #[test]
    fn matches_brute_force_up_to_five_vertices() {
        for n in 1..=5 {
            assert_eq!(count(n, EnumerationFilter::default()), brute_force_classes(n).len(), "n = {n}");
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(matches!(
            enumerate_small(9, EnumerationFilter::default()),
            Err(GraphError::UseExternalGenerator(9))
        ));
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<Graph> = enumerate_small(5, EnumerationFilter::default()).unwrap().collect();
        let b: Vec<Graph> = enumerate_small(5, EnumerationFilter::default()).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].edge_count() <= w[1].edge_count()));
    }
}

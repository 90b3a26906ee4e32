//! Structural predicates used as combinatorial certificates.
//!
//! Everything here is exhaustive over vertex subsets; the graphs of interest
//! have at most twelve vertices.

use super::{for_each_subset, mask_vertices, Graph, GraphError};

/// A `k`-vertex subgraph with more than `3k - 6` edges is dependent in the
/// 3-dimensional rigidity matroid; the witness search uses `3k - DENSE_SLACK`.
pub const DENSE_SLACK: usize = 5;

pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Number of edges with both endpoints in `mask`.
pub fn induced_edge_count(g: &Graph, mask: u64) -> usize {
    mask_vertices(mask)
        .map(|v| (g.neighbors(v) & mask).count_ones() as usize)
        .sum::<usize>()
        / 2
}

/// Whether the vertices in `alive` induce a connected subgraph (an empty set counts as connected).
fn is_connected_within(g: &Graph, alive: u64) -> bool {
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros();
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in mask_vertices(frontier) {
            next |= g.neighbors(v) & alive;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == alive
}

pub fn is_connected(g: &Graph) -> bool {
    is_connected_within(g, g.vertex_mask())
}

/// Finds a vertex set of size `< k` whose removal disconnects `g`. Returns an
/// empty set when `g` itself is disconnected.
pub fn find_small_cut(g: &Graph, k: usize) -> Result<Option<Vec<usize>>, GraphError> {
    if !(2..=3).contains(&k) {
        return Err(GraphError::UnsupportedConnectivity(k));
    }
    if g.n() <= k {
        return Err(GraphError::DegenerateSize {
            what: "k-connectivity",
            min: k,
            n: g.n(),
        });
    }
    let all = g.vertex_mask();
    for size in 0..k {
        let mut cut = None;
        for_each_subset(g.n(), size, |s| {
            if !is_connected_within(g, all & !s) {
                cut = Some(s);
                true
            } else {
                false
            }
        });
        if let Some(s) = cut {
            return Ok(Some(mask_vertices(s).collect()));
        }
    }
    Ok(None)
}

/// `k`-connectivity for `k` in `{2, 3}` by exhaustive removal of all vertex
/// sets of size below `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> Result<bool, GraphError> {
    Ok(find_small_cut(g, k)?.is_none())
}

/// Vertex set of a `K5` subgraph, lowest subset first.
pub fn find_k5_subgraph(g: &Graph) -> Option<[usize; 5]> {
    let mut found = None;
    for_each_subset(g.n(), 5, |s| {
        if induced_edge_count(g, s) == 10 {
            found = Some(s);
            true
        } else {
            false
        }
    });
    found.map(|s| {
        let v: Vec<usize> = mask_vertices(s).collect();
        [v[0], v[1], v[2], v[3], v[4]]
    })
}

pub fn has_k5_subgraph(g: &Graph) -> bool {
    find_k5_subgraph(g).is_some()
}

/// A `k`-subset of vertices inducing at least `3k - 5` edges, if any.
/// Returns `None` when `k` is outside `4..=n`.
pub fn dense_subgraph_witness(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k < 4 || k > g.n() {
        return None;
    }
    let threshold = 3 * k - DENSE_SLACK;
    let mut found = None;
    for_each_subset(g.n(), k, |s| {
        if induced_edge_count(g, s) >= threshold {
            found = Some(s);
            true
        } else {
            false
        }
    });
    found.map(|s| mask_vertices(s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn min_degrees() {
        assert_eq!(min_degree(&Graph::k55()), 5);
        assert_eq!(min_degree(&Graph::path(3)), 1);
        assert_eq!(min_degree(&Graph::complete(5)), 4);
        assert_eq!(min_degree(&Graph::empty(3)), 0);
    }

    #[test]
    fn connectivity() {
        assert!(is_k_connected(&Graph::k55(), 3).unwrap());
        assert!(!is_k_connected(&bowtie(), 2).unwrap());
        assert_eq!(find_small_cut(&bowtie(), 2).unwrap(), Some(vec![2]));
        assert!(is_k_connected(&Graph::complete(4), 3).unwrap());
        assert!(is_k_connected(&Graph::cycle(5), 2).unwrap());
        assert!(!is_k_connected(&Graph::cycle(5), 3).unwrap());
        assert_eq!(find_small_cut(&Graph::empty(4), 2).unwrap(), Some(vec![]));
    }

    #[test]
    fn connectivity_degenerate_sizes() {
        assert!(matches!(
            is_k_connected(&Graph::complete(3), 3),
            Err(GraphError::DegenerateSize { .. })
        ));
        assert!(matches!(
            is_k_connected(&Graph::complete(6), 4),
            Err(GraphError::UnsupportedConnectivity(4))
        ));
    }

    #[test]
    fn k5_detection() {
        assert!(has_k5_subgraph(&Graph::complete(6)));
        assert!(!has_k5_subgraph(&Graph::k55()));
        let g = Graph::new(6, Graph::complete(5).edges().iter().copied().chain([(4, 5)])).unwrap();
        assert_eq!(find_k5_subgraph(&g), Some([0, 1, 2, 3, 4]));
    }

    #[test]
    fn dense_witnesses() {
        let g = Graph::new(7, Graph::complete(5).edges().iter().copied().chain([(4, 5), (5, 6)])).unwrap();
        assert_eq!(dense_subgraph_witness(&g, 5), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(dense_subgraph_witness(&Graph::k55(), 6), None);
        let k6_plus = Graph::new(9, Graph::complete(6).edges().iter().copied().chain([(6, 7)])).unwrap();
        assert_eq!(dense_subgraph_witness(&k6_plus, 6), Some(vec![0, 1, 2, 3, 4, 5]));
        assert_eq!(dense_subgraph_witness(&k6_plus, 3), None);
        assert_eq!(dense_subgraph_witness(&k6_plus, 10), None);
    }
}

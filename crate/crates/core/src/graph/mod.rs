//! Simple undirected graphs on at most 64 labeled vertices.
//!
//! Vertices are `0..n`. Edges are stored as pairs `(u, v)` with `u < v`,
//! sorted lexicographically; the position of an edge in that list is its
//! canonical index, which every edge-indexed vector in the crate
//! (measurements, stresses, rigidity-matrix rows) follows. Adjacency is kept
//! alongside as one bitmask per vertex.

mod canon;
mod enumerate;
mod graph6;
mod props;

pub use canon::{canonical_form, canonical_form_bruteforce, canonical_labeling, is_isomorphic_to};
pub use enumerate::{enumerate_small, Connectivity, EnumerationFilter, MAX_INTERNAL_VERTICES};
pub use graph6::{graph6_decode, graph6_encode, GRAPH6_MAX_VERTICES};
pub use props::{
    dense_subgraph_witness, find_k5_subgraph, find_small_cut, has_k5_subgraph, induced_edge_count,
    is_connected, is_k_connected, min_degree, DENSE_SLACK,
};

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold (one `u64` adjacency mask per vertex).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph6 input is empty")]
    EmptyGraph6,
    #[error("graph6 byte {byte} at offset {offset} is outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("graph6 long-form size header at offset 0 is not supported (n > {GRAPH6_MAX_VERTICES})")]
    LongForm,
    #[error("graph6 body truncated: expected {expected} bytes after the header, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 trailing garbage starting at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("graph6 padding bits are not zero in the byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph6 short form supports at most {GRAPH6_MAX_VERTICES} vertices, got {0}")]
    UnsupportedSize(usize),
    #[error("{what} needs more than {min} vertices, graph has {n}")]
    DegenerateSize { what: &'static str, min: usize, n: usize },
    #[error("connectivity level {0} is not supported (only 2 and 3)")]
    UnsupportedConnectivity(usize),
    #[error("internal enumeration is limited to n <= {MAX_INTERNAL_VERTICES}; use an external geng stream for n = {0}")]
    UseExternalGenerator(usize),
    #[error("vertex permutation is not a bijection on 0..{0}")]
    BadPermutation(usize),
}

/// A simple undirected graph with a canonical edge order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph from an arbitrary list of vertex pairs. Pairs are
    /// normalized to `u < v` and sorted; loops, duplicates and out-of-range
    /// vertices are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![0u64; n];
        for &(u, v) in &edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Graph { n, edges, adj }
    }

    /// Builds a graph from per-vertex adjacency masks (assumed symmetric, loop-free).
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for u in 0..n {
            let mut higher = adj[u] >> (u + 1);
            while higher != 0 {
                let off = higher.trailing_zeros() as usize;
                edges.push((u, u + 1 + off));
                higher &= higher - 1;
            }
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted_unchecked(n, edges)
    }

    /// `K_{a,b}` with left part `0..a` and right part `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_sorted_unchecked(a + b, edges)
    }

    /// `K_{5,5}` with left part `{0..4}` and right part `{5..9}`; edge `(i, j)`
    /// sits at index `5 * i + (j - 5)`.
    pub fn k55() -> Self {
        Self::complete_bipartite(5, 5)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Wheel with hub `0` and a rim cycle on `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        assert!(rim >= 3, "a wheel rim needs at least 3 vertices");
        let spokes = (1..=rim).map(|v| (0, v));
        let rim_edges = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
        Self::new(rim + 1, spokes.chain(rim_edges)).expect("wheel edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Canonical index of edge `{u, v}`.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// The graph with the edge at canonical index `index` removed.
    pub fn without_edge(&self, index: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// The graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        Self::new(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation(self.n));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(GraphError::BadPermutation(self.n));
            }
            seen |= 1 << p;
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

/// Iterates the vertices whose bits are set in `mask`, lowest first.
pub(crate) fn mask_vertices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Calls `visit` with every `k`-subset of `0..n` as a bitmask, in increasing
/// numeric order. Stops early when `visit` returns `true`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) -> bool {
    if k > n || n > 63 {
        return false;
    }
    if k == 0 {
        return visit(0);
    }
    let limit = 1u64 << n;
    let mut s: u64 = (1u64 << k) - 1;
    while s < limit {
        if visit(s) {
            return true;
        }
        // Gosper's hack: next integer with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_normalizes_and_sorts() {
        let g = Graph::new(3, [(2, 1), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(g.edge_index(2, 1), Some(1));
        assert_eq!(g.edge_index(0, 1), None);
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange(..))
        ));
        assert!(matches!(
            Graph::new(65, []),
            Err(GraphError::TooManyVertices(65))
        ));
    }

    #[test]
    fn k55_edge_order_matches_variable_layout() {
        let g = Graph::k55();
        assert_eq!(g.edge_count(), 25);
        for i in 0..5 {
            for j in 5..10 {
                assert_eq!(g.edge_index(i, j), Some(5 * i + (j - 5)));
            }
        }
    }

    #[test]
    fn families() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::wheel(5).edge_count(), 10);
        assert_eq!(Graph::cycle(6).edge_count(), 6);
        assert_eq!(Graph::path(3).edge_count(), 2);
    }

    #[test]
    fn subsets_are_enumerated_exactly_once() {
        let mut count = 0;
        for_each_subset(7, 3, |m| {
            assert_eq!(m.count_ones(), 3);
            count += 1;
            false
        });
        assert_eq!(count, 35);
    }

    #[test]
    fn adjacency_roundtrip() {
        let g = Graph::wheel(6);
        let h = Graph::from_adjacency((0..g.n()).map(|v| g.neighbors(v)).collect());
        assert_eq!(g, h);
    }
}

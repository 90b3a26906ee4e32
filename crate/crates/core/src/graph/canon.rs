//! Canonical labeling by partition refinement and backtracking.
//!
//! The search tree is the usual individualize-and-refine tree. Every leaf is
//! a vertex ordering; the canonical form is the leaf whose relabeled
//! adjacency code is largest. Two leaves with equal codes give an
//! automorphism, and stored automorphisms that fix the current path pointwise
//! prune equivalent siblings.
//!
//! Codes are packed into a `u128`, so this works up to 16 vertices.

use super::{Graph, GraphError};

pub const MAX_CANON_VERTICES: usize = 16;

type Cells = Vec<Vec<usize>>;

/// Adjacency code of `g` read in vertex order `order` (`order[pos] = vertex`).
fn leaf_code(g: &Graph, order: &[usize]) -> u128 {
    let mut code = 0u128;
    for b in 1..order.len() {
        let nb = g.neighbors(order[b]);
        for &va in &order[..b] {
            code = (code << 1) | (nb >> va & 1) as u128;
        }
    }
    code
}

/// Refines `cells` to the coarsest equitable partition below it. Splits are
/// ordered by neighbor count, so the result is labeling-invariant.
fn refine(g: &Graph, cells: &mut Cells) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[c]
                    .iter()
                    .map(|&v| ((g.neighbors(v) & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                if keyed.first().map(|k| k.0) == keyed.last().map(|k| k.0) {
                    continue;
                }
                let mut pieces: Cells = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        pieces.push(Vec::new());
                        last = Some(k);
                    }
                    pieces.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, pieces);
                continue 'restart;
            }
        }
        break;
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u128, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Cells, path: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().flatten().collect();
            self.visit_leaf(order);
            return;
        };
        let target = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if explored.iter().any(|&u| self.same_orbit(path, u, v)) {
                continue;
            }
            explored.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(target.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            path.push(v);
            self.run(next, path);
            path.pop();
        }
    }

    fn visit_leaf(&mut self, order: Vec<usize>) {
        let code = leaf_code(self.g, &order);
        match &self.best {
            Some((best, best_order)) if code == *best => {
                let mut gamma = vec![0; order.len()];
                for (pos, &v) in best_order.iter().enumerate() {
                    gamma[v] = order[pos];
                }
                if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                    self.automorphisms.push(gamma);
                }
            }
            Some((best, _)) if code < *best => {}
            _ => self.best = Some((code, order)),
        }
    }

    /// Whether `a` and `b` share an orbit under the group generated by the
    /// known automorphisms that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], a: usize, b: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if path.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }
}

fn check_size(g: &Graph) -> Result<(), GraphError> {
    if g.n() > MAX_CANON_VERTICES {
        Err(GraphError::TooManyVertices(g.n()))
    } else {
        Ok(())
    }
}

/// Canonical labeling: `labels[v]` is the new label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, GraphError> {
    check_size(g)?;
    let mut search = Search { g, best: None, automorphisms: Vec::new() };
    search.run(vec![(0..g.n()).collect()], &mut Vec::new());
    let order = search.best.map(|b| b.1).unwrap_or_default();
    let mut labels = vec![0; g.n()];
    for (pos, v) in order.into_iter().enumerate() {
        labels[v] = pos;
    }
    Ok(labels)
}

/// The canonically relabeled copy of `g`; isomorphic graphs give equal results.
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    let labels = canonical_labeling(g)?;
    g.relabel(&labels)
}

/// Reference canonical form: maximum code over all `n!` orderings. Only
/// meant for `n <= 9`.
pub fn canonical_form_bruteforce(g: &Graph) -> Result<Graph, GraphError> {
    if g.n() > 9 {
        return Err(GraphError::TooManyVertices(g.n()));
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = (leaf_code(g, &order), order.clone());
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let code = leaf_code(g, &order);
            if code > best.0 {
                best = (code, order.clone());
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let mut labels = vec![0; n];
    for (pos, &v) in best.1.iter().enumerate() {
        labels[v] = pos;
    }
    g.relabel(&labels)
}

/// Graph isomorphism via canonical forms, with a degree-sequence prefilter.
/// Graphs of different order are simply non-isomorphic.
pub fn is_isomorphic_to(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// Packed canonical code, used for deduplication during enumeration.
pub(crate) fn canonical_code(g: &Graph) -> u128 {
    let labels = canonical_labeling(g).expect("enumeration stays within canonical size limit");
    let mut order = vec![0; g.n()];
    for (v, &l) in labels.iter().enumerate() {
        order[l] = v;
    }
    leaf_code(g, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        g.relabel(&perm).unwrap()
    }

    #[test]
    fn k55_shuffled_is_isomorphic() {
        let g = Graph::k55();
        for seed in 0..5 {
            assert!(is_isomorphic_to(&g, &shuffled(&g, seed)).unwrap());
        }
    }

    #[test]
    fn k55_vs_5_regular_with_triangle() {
        // The 5-regular circulant C10(1, 2, 5) contains triangles.
        let edges: std::collections::BTreeSet<(usize, usize)> = (0..10)
            .flat_map(|i: usize| [(i, (i + 1) % 10), (i, (i + 2) % 10), (i, (i + 5) % 10)])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let h = Graph::new(10, edges).unwrap();
        assert_eq!(h.edge_count(), 25);
        assert!(h.degrees().iter().all(|&d| d == 5));
        assert!(!is_isomorphic_to(&Graph::k55(), &h).unwrap());
    }

    #[test]
    fn c6_vs_two_triangles() {
        let two_c3 = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_isomorphic_to(&Graph::cycle(6), &two_c3).unwrap());
    }

    #[test]
    fn refinement_search_agrees_with_bruteforce_on_isomorphism() {
        let base = [
            Graph::cycle(7),
            Graph::wheel(5),
            Graph::complete_bipartite(3, 4),
            Graph::path(6),
            Graph::empty(5),
            Graph::complete(6),
            Graph::new(7, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (2, 3)]).unwrap(),
            Graph::new(7, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (4, 5)]).unwrap(),
        ];
        let mut samples = Vec::new();
        for (i, g) in base.iter().enumerate() {
            samples.push(g.clone());
            samples.push(shuffled(g, i as u64));
        }
        for g in &samples {
            for h in &samples {
                let by_search = canonical_form(g).unwrap() == canonical_form(h).unwrap();
                let by_brute =
                    canonical_form_bruteforce(g).unwrap() == canonical_form_bruteforce(h).unwrap();
                assert_eq!(by_search, by_brute, "{g:?} vs {h:?}");
            }
        }
    }

    #[test]
    fn size_mismatch_is_false() {
        assert!(!is_isomorphic_to(&Graph::cycle(5), &Graph::cycle(6)).unwrap());
    }

    #[test]
    fn symmetric_graphs_terminate_quickly() {
        for n in [10, 12] {
            let g = Graph::complete(n);
            assert_eq!(canonical_form(&g).unwrap(), g);
            assert_eq!(canonical_form(&Graph::empty(n)).unwrap(), Graph::empty(n));
        }
        assert!(is_isomorphic_to(&Graph::complete_bipartite(6, 6), &shuffled(&Graph::complete_bipartite(6, 6), 3)).unwrap());
    }
}

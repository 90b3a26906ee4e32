//! Generic rank, independence certificates and circuit tests.
//!
//! Rank at an explicit point is a lower bound on the generic rank, so full
//! row rank at a witness configuration certifies independence. Dependence is
//! only certified by counting: an edge set on `k` vertices with more than
//! `max_rigid_rank(k, d)` edges cannot be independent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_prime_configuration, rigidity_matrix, Configuration};
use crate::graph::{for_each_subset, induced_edge_count, mask_vertices, Graph};
use crate::linalg::{rank, Field, Matrix, PrimeField};

/// Rank of the complete graph on `k` vertices in dimension `d`:
/// `k d - d(d+1)/2` when `k >= d + 1`, else `k(k-1)/2`.
pub fn max_rigid_rank(k: usize, d: usize) -> usize {
    if k > d {
        k * d - d * (d + 1) / 2
    } else {
        k * k.saturating_sub(1) / 2
    }
}

fn spanned_vertices(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) > 0).count()
}

fn trial_matrices(g: &Graph, d: usize, field: &PrimeField, seed: u64, trials: usize) -> Vec<Matrix<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1))
        .map(|_| {
            let p = random_prime_configuration(field, g.n(), d, &mut rng);
            rigidity_matrix(field, g, &p).expect("configuration covers the graph")
        })
        .collect()
}

fn best_rank(field: &PrimeField, matrices: &[Matrix<u64>], rows: Option<&[usize]>, cap: usize) -> usize {
    let mut best = 0;
    for m in matrices {
        let r = match rows {
            Some(rows) => rank(field, &m.select_rows(rows)),
            None => rank(field, m),
        };
        best = best.max(r);
        if best >= cap {
            break;
        }
    }
    best
}

/// Maximum rank of the rigidity matrix over `trials` seeded random
/// configurations in the prime field. A certified lower bound on the generic
/// rank, equal to it with overwhelming probability.
pub fn generic_rank(g: &Graph, d: usize, field: &PrimeField, seed: u64, trials: usize) -> usize {
    let cap = g.edge_count().min(max_rigid_rank(spanned_vertices(g), d));
    let r = best_rank(field, &trial_matrices(g, d, field, seed, trials), None, cap);
    assert!(r <= cap, "rank {r} exceeds the rigidity upper bound {cap}");
    r
}

/// Whether the rigidity matrix has full row rank at `p`; a sound
/// certificate that `g` is independent in the generic rigidity matroid.
pub fn is_independent_certified<F: Field>(f: &F, g: &Graph, p: &Configuration<F::Elem>) -> bool {
    match rigidity_matrix(f, g, p) {
        Ok(m) => rank(f, &m) == g.edge_count(),
        Err(_) => false,
    }
}

/// A vertex set inducing more edges than an independent set on that many
/// vertices can have. Exhaustive, so only attempted for `n <= 20`.
pub fn count_violation_witness(g: &Graph, d: usize) -> Option<Vec<usize>> {
    if g.n() > 20 {
        return None;
    }
    for k in 2..=g.n() {
        let bound = max_rigid_rank(k, d);
        let mut found = None;
        for_each_subset(g.n(), k, |s| {
            if induced_edge_count(g, s) > bound {
                found = Some(s);
                true
            } else {
                false
            }
        });
        if let Some(s) = found {
            return Some(mask_vertices(s).collect());
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateLevel {
    /// Every claim is backed by an explicit witness point or a count bound.
    Certified,
    /// Some claim rests on rank deficiency observed at random points only.
    Probabilistic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitReport {
    pub is_circuit: bool,
    pub level: CertificateLevel,
    /// Best rank found for the whole edge set.
    pub rank: usize,
}

/// Tests whether `g` is a circuit of the `d`-dimensional rigidity matroid:
/// rank `|E| - 1` with every single-edge deletion independent.
pub fn is_circuit(g: &Graph, d: usize, field: &PrimeField, seed: u64, trials: usize) -> CircuitReport {
    let m = g.edge_count();
    let cap = m.min(max_rigid_rank(spanned_vertices(g), d));
    let matrices = trial_matrices(g, d, field, seed, trials);
    let r = best_rank(field, &matrices, None, cap);
    let report = |is_circuit, certified: bool| CircuitReport {
        is_circuit,
        level: if certified { CertificateLevel::Certified } else { CertificateLevel::Probabilistic },
        rank: r,
    };
    if m == 0 || r == m {
        // Independent at an explicit point.
        return report(false, true);
    }
    if r + 1 < m {
        // The full set looks too deficient; only a count bound on every
        // deletion would make this certain, which we do not attempt.
        return report(false, false);
    }
    let dependent_certified = count_violation_witness(g, d).is_some();
    for e in 0..m {
        let rows: Vec<usize> = (0..m).filter(|&i| i != e).collect();
        if best_rank(field, &matrices, Some(&rows), m - 1) < m - 1 {
            let sub_dependent = count_violation_witness(&g.without_edge(e), d).is_some();
            return report(false, sub_dependent);
        }
    }
    report(true, dependent_certified)
}

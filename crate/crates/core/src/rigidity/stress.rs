//! Equilibrium stresses: left-kernel vectors of the rigidity matrix.

use super::{rigidity_matrix, Configuration, RigidityError};
use crate::graph::Graph;
use crate::linalg::{left_nullspace, vec_mat, Field};

/// Edge-indexed vector in the left kernel of a rigidity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stress<T> {
    values: Vec<T>,
}

impl<T: Clone> Stress<T> {
    /// Checks `w R(p) = 0` exactly before accepting `values`.
    pub fn new<F: Field<Elem = T>>(
        f: &F,
        g: &Graph,
        p: &Configuration<T>,
        values: Vec<T>,
    ) -> Result<Self, RigidityError> {
        if values.len() != g.edge_count() {
            return Err(RigidityError::EdgeCountMismatch { len: values.len(), edges: g.edge_count() });
        }
        let m = rigidity_matrix(f, g, p)?;
        if vec_mat(f, &values, &m).iter().all(|x| f.is_zero(x)) {
            Ok(Stress { values })
        } else {
            Err(RigidityError::NotAStress)
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, by: &T) -> Self {
        Stress { values: self.values.iter().map(|x| f.mul(x, by)).collect() }
    }
}

/// Basis of the stress space at `p`, in reduced echelon normalization.
pub fn stress_basis<F: Field>(
    f: &F,
    g: &Graph,
    p: &Configuration<F::Elem>,
) -> Result<Vec<Stress<F::Elem>>, RigidityError> {
    let m = rigidity_matrix(f, g, p)?;
    let basis = left_nullspace(f, &m);
    debug_assert!(basis.iter().all(|w| vec_mat(f, w, &m).iter().all(|x| f.is_zero(x))));
    Ok(basis.into_iter().map(|values| Stress { values }).collect())
}

/// Sum of all stress coordinates; zero means balanced.
pub fn stress_sum<F: Field>(f: &F, w: &Stress<F::Elem>) -> F::Elem {
    f.sum(w.values())
}

/// For each vertex, the sum of the stress over its incident edges.
pub fn vertex_stress_sums<F: Field>(f: &F, g: &Graph, w: &Stress<F::Elem>) -> Result<Vec<F::Elem>, RigidityError> {
    if w.values().len() != g.edge_count() {
        return Err(RigidityError::EdgeCountMismatch { len: w.values().len(), edges: g.edge_count() });
    }
    let mut sums = vec![f.zero(); g.n()];
    for (&(u, v), x) in g.edges().iter().zip(w.values()) {
        sums[u] = f.add(&sums[u], x);
        sums[v] = f.add(&sums[v], x);
    }
    Ok(sums)
}

/// Net force `sum_j w_vj (p_v - p_j)` at every vertex `v`.
pub fn equilibrium_residual<F: Field>(
    f: &F,
    g: &Graph,
    p: &Configuration<F::Elem>,
    w: &[F::Elem],
) -> Result<Vec<Vec<F::Elem>>, RigidityError> {
    if w.len() != g.edge_count() {
        return Err(RigidityError::EdgeCountMismatch { len: w.len(), edges: g.edge_count() });
    }
    if p.len() < g.n() {
        return Err(RigidityError::MissingPoint { vertex: p.len(), points: p.len() });
    }
    let d = p.dim();
    let mut force = vec![vec![f.zero(); d]; g.n()];
    for (&(u, v), x) in g.edges().iter().zip(w) {
        for k in 0..d {
            let diff = f.mul(x, &f.sub(&p.point(u)[k], &p.point(v)[k]));
            force[u][k] = f.add(&force[u][k], &diff);
            force[v][k] = f.sub(&force[v][k], &diff);
        }
    }
    Ok(force)
}

/// Whether `w` is an equilibrium stress of `(g, p)`: every residual is exactly zero.
pub fn is_equilibrium<F: Field>(
    f: &F,
    g: &Graph,
    p: &Configuration<F::Elem>,
    w: &[F::Elem],
) -> Result<bool, RigidityError> {
    Ok(equilibrium_residual(f, g, p, w)?.iter().flatten().all(|x| f.is_zero(x)))
}

//! Frameworks, the measurement map and the rigidity matrix.
//!
//! A framework is a graph together with one point per vertex. Its
//! measurement is the vector of non-Hermitian squared edge lengths
//! `sum_k (p(u)_k - p(v)_k)^2`, one entry per edge in canonical order. The
//! rigidity matrix is the Jacobian of that map, with the literal factor 2.

mod circuit;
mod regular;
mod sample;
mod stress;

pub use circuit::{
    count_violation_witness, generic_rank, is_circuit, is_independent_certified, max_rigid_rank, CertificateLevel,
    CircuitReport,
};
pub use regular::{in_affine_general_position, lies_on_quadric, quadric_monomial_matrix};
pub use sample::{random_integer_configuration, random_prime_configuration};
pub use stress::{equilibrium_residual, is_equilibrium, stress_basis, stress_sum, vertex_stress_sums, Stress};

use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{Field, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("point dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("configuration has {points} points but vertex {vertex} needs one")]
    MissingPoint { vertex: usize, points: usize },
    #[error("expected {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("expected dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("vector of length {len} is not indexed like the {edges} edges of the graph")]
    EdgeCountMismatch { len: usize, edges: usize },
    #[error("vector is not in the left kernel of the rigidity matrix")]
    NotAStress,
}

/// One point of dimension `dim` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration<T> {
    dim: usize,
    points: Vec<Vec<T>>,
}

impl<T: Clone> Configuration<T> {
    pub fn new(dim: usize, points: Vec<Vec<T>>) -> Result<Self, RigidityError> {
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(RigidityError::DimensionMismatch(dim, bad.len()));
        }
        Ok(Configuration { dim, points })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, v: usize) -> &[T] {
        &self.points[v]
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// The first `n` points.
    pub fn prefix(&self, n: usize) -> Self {
        Configuration { dim: self.dim, points: self.points[..n.min(self.points.len())].to_vec() }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Configuration<U> {
        Configuration {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(&mut f).collect()).collect(),
        }
    }

    fn covers(&self, g: &Graph) -> Result<(), RigidityError> {
        if self.points.len() < g.n() {
            return Err(RigidityError::MissingPoint { vertex: self.points.len(), points: self.points.len() });
        }
        Ok(())
    }
}

/// Squared edge lengths in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementVector<T>(Vec<T>);

impl<T> MeasurementVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        MeasurementVector(values)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `sum_k (pu_k - pv_k)^2`, without conjugation.
pub fn squared_length<F: Field>(f: &F, pu: &[F::Elem], pv: &[F::Elem]) -> Result<F::Elem, RigidityError> {
    if pu.len() != pv.len() {
        return Err(RigidityError::DimensionMismatch(pu.len(), pv.len()));
    }
    Ok(pu.iter().zip(pv).fold(f.zero(), |acc, (a, b)| {
        let d = f.sub(a, b);
        f.add(&acc, &f.mul(&d, &d))
    }))
}

pub fn measurement<F: Field>(
    f: &F,
    g: &Graph,
    p: &Configuration<F::Elem>,
) -> Result<MeasurementVector<F::Elem>, RigidityError> {
    p.covers(g)?;
    g.edges()
        .iter()
        .map(|&(u, v)| squared_length(f, p.point(u), p.point(v)))
        .collect::<Result<_, _>>()
        .map(MeasurementVector)
}

/// `|E| x (n d)` Jacobian of the measurement map. The row of edge `uv` holds
/// `2 (p_u - p_v)` in the columns of `u` and `2 (p_v - p_u)` in those of `v`.
pub fn rigidity_matrix<F: Field>(
    f: &F,
    g: &Graph,
    p: &Configuration<F::Elem>,
) -> Result<Matrix<F::Elem>, RigidityError> {
    p.covers(g)?;
    let d = p.dim();
    let two = f.from_i64(2);
    let mut m = Matrix::filled(g.edge_count(), g.n() * d, f.zero());
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        for k in 0..d {
            let diff = f.mul(&two, &f.sub(&p.point(u)[k], &p.point(v)[k]));
            m[(row, u * d + k)] = diff.clone();
            m[(row, v * d + k)] = f.neg(&diff);
        }
    }
    Ok(m)
}

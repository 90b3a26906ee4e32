//! Regular-point predicates for ten points in 3-space: affine general
//! position and avoidance of quadrics.

use super::{Configuration, RigidityError};
use crate::graph::{for_each_subset, mask_vertices};
use crate::linalg::{determinant, rank, Field, Matrix};

const POINTS: usize = 10;
const DIM: usize = 3;

fn check_shape<T: Clone>(p: &Configuration<T>) -> Result<(), RigidityError> {
    if p.dim() != DIM {
        return Err(RigidityError::WrongDimension { expected: DIM, found: p.dim() });
    }
    if p.len() != POINTS {
        return Err(RigidityError::WrongPointCount { expected: POINTS, found: p.len() });
    }
    Ok(())
}

/// True iff every four of the ten points are affinely independent.
pub fn in_affine_general_position<F: Field>(f: &F, p: &Configuration<F::Elem>) -> Result<bool, RigidityError> {
    check_shape(p)?;
    let degenerate = for_each_subset(POINTS, 4, |s| {
        let rows: Vec<Vec<F::Elem>> = mask_vertices(s)
            .map(|v| std::iter::once(f.one()).chain(p.point(v).iter().cloned()).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("rows have equal length");
        rank(f, &m) < 4
    });
    Ok(!degenerate)
}

/// Rows `(1, x, y, z, x^2, y^2, z^2, xy, xz, yz)`, one per point.
pub fn quadric_monomial_matrix<F: Field>(f: &F, p: &Configuration<F::Elem>) -> Matrix<F::Elem> {
    let rows = p
        .points()
        .iter()
        .map(|q| {
            let (x, y, z) = (&q[0], &q[1], &q[2]);
            vec![
                f.one(),
                x.clone(),
                y.clone(),
                z.clone(),
                f.mul(x, x),
                f.mul(y, y),
                f.mul(z, z),
                f.mul(x, y),
                f.mul(x, z),
                f.mul(y, z),
            ]
        })
        .collect();
    Matrix::from_rows(rows).expect("rows have equal length")
}

/// True iff some nonzero polynomial of degree at most two vanishes on all ten points.
pub fn lies_on_quadric<F: Field>(f: &F, p: &Configuration<F::Elem>) -> Result<bool, RigidityError> {
    check_shape(p)?;
    let det = determinant(f, &quadric_monomial_matrix(f, p)).expect("10x10 is square");
    Ok(f.is_zero(&det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::rigidity::random_integer_configuration;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn random(seed: u64) -> Configuration<BigRational> {
        random_integer_configuration(10, 3, 1000, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn random_points_are_regular() {
        for seed in 0..5 {
            let p = random(seed);
            assert!(in_affine_general_position(&Rationals, &p).unwrap());
            assert!(!lies_on_quadric(&Rationals, &p).unwrap());
        }
    }

    #[test]
    fn coplanar_four_break_general_position() {
        let mut pts = random(9).points().to_vec();
        for (i, v) in pts.iter_mut().take(4).enumerate() {
            v[2] = q(7, 1);
            v[0] = q(i as i64 * i as i64, 1);
        }
        let p = Configuration::new(3, pts).unwrap();
        assert!(!in_affine_general_position(&Rationals, &p).unwrap());
    }

    #[test]
    fn coincident_points() {
        let p = Configuration::new(3, vec![vec![q(1, 1), q(2, 1), q(3, 1)]; 10]).unwrap();
        assert!(!in_affine_general_position(&Rationals, &p).unwrap());
        assert!(lies_on_quadric(&Rationals, &p).unwrap());
    }

    #[test]
    fn sphere_and_plane_are_quadrics() {
        // Inverse stereographic projection of integer points (s, t).
        let sphere: Vec<Vec<BigRational>> = (0..10)
            .map(|i| {
                let (s, t) = (i as i64 - 3, 2 * i as i64 % 7 - 2);
                let den = s * s + t * t + 1;
                vec![q(2 * s, den), q(2 * t, den), q(s * s + t * t - 1, den)]
            })
            .collect();
        let on_sphere = Configuration::new(3, sphere).unwrap();
        assert!(lies_on_quadric(&Rationals, &on_sphere).unwrap());

        let planar: Vec<Vec<BigRational>> = random(3).points().iter().map(|v| vec![v[0].clone(), v[1].clone(), q(5, 1)]).collect();
        assert!(lies_on_quadric(&Rationals, &Configuration::new(3, planar).unwrap()).unwrap());
    }

    #[test]
    fn shape_errors() {
        let p = random_integer_configuration(9, 3, 10, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(lies_on_quadric(&Rationals, &p), Err(RigidityError::WrongPointCount { .. })));
        let p = random_integer_configuration(10, 2, 10, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(in_affine_general_position(&Rationals, &p), Err(RigidityError::WrongDimension { .. })));
    }
}

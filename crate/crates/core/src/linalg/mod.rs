//! Exact dense linear algebra over a prime field or the rationals.
//!
//! Soundness per field: if an integer matrix has full rank modulo a prime it
//! has full rank over the rationals, since reduction can only lower rank. A
//! rank deficiency observed modulo a prime certifies nothing on its own and
//! has to be confirmed with rational arithmetic or a combinatorial argument.

mod bareiss;
mod field;
mod matrix;

pub use bareiss::{bareiss_determinant, bareiss_rank};
pub use field::{format_rational, is_prime_u64, parse_rational, Field, FieldError, PrimeField, Rationals, MERSENNE_61};
pub use matrix::{determinant, identity, left_nullspace, mat_vec, rank, right_nullspace, rref, vec_mat, Matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {rows}x{cols} = {} entries, found {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        Matrix::from_rows(rows)
            .unwrap()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
    }

    fn z(rows: &[Vec<i64>]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.to_vec()).unwrap().map(|&v| BigInt::from(v))
    }

    fn qi(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Rationals, &identity(&Rationals, 3)), 3);
        assert_eq!(rank(&Rationals, &q(vec![vec![0, 0], vec![0, 0]])), 0);
        assert_eq!(rank(&Rationals, &q(vec![vec![1, 2], vec![2, 4]])), 1);
        let f = PrimeField::default();
        assert_eq!(rank(&f, &identity(&f, 4)), 4);
    }

    #[test]
    fn left_nullspace_examples() {
        assert!(left_nullspace(&Rationals, &identity(&Rationals, 2)).is_empty());
        let basis = left_nullspace(&Rationals, &q(vec![vec![1, 2], vec![2, 4]]));
        assert_eq!(basis, vec![vec![qi(-2), qi(1)]]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&Rationals, &identity(&Rationals, 3)).unwrap(), qi(1));
        assert_eq!(determinant(&Rationals, &q(vec![vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]])).unwrap(), qi(0));
        assert_eq!(determinant(&Rationals, &q(vec![vec![0, 1], vec![1, 0]])).unwrap(), qi(-1));
        assert_eq!(
            determinant(&Rationals, &q(vec![vec![1, 2, 3]])),
            Err(LinalgError::NotSquare { rows: 1, cols: 3 })
        );
        assert_eq!(bareiss_determinant(&z(&[vec![0, 1], vec![1, 0]])).unwrap(), BigInt::from(-1));
        let f = PrimeField::new(7).unwrap();
        assert_eq!(determinant(&f, &Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()).unwrap(), 6);
    }

    #[test]
    fn entry_count_is_checked() {
        assert!(Matrix::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(Matrix::from_rows(vec![vec![1, 2], vec![3]]).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn nullity_plus_rank_is_rows(rows in small_matrix()) {
            let m = q(rows);
            let basis = left_nullspace(&Rationals, &m);
            prop_assert_eq!(basis.len() + rank(&Rationals, &m), m.rows());
            for w in &basis {
                prop_assert!(vec_mat(&Rationals, w, &m).iter().all(|x| x == &qi(0)));
            }
        }

        #[test]
        fn bareiss_agrees_with_rational_elimination(rows in small_matrix()) {
            let zm = z(&rows);
            let qm = q(rows);
            prop_assert_eq!(bareiss_rank(&zm), rank(&Rationals, &qm));
            if zm.is_square() {
                let d = bareiss_determinant(&zm).unwrap();
                prop_assert_eq!(BigRational::from_integer(d), determinant(&Rationals, &qm).unwrap());
            }
        }

        #[test]
        fn modular_rank_never_exceeds_rational_rank(rows in small_matrix()) {
            let small = PrimeField::new(5).unwrap();
            let fm = Matrix::from_rows(rows.clone()).unwrap().map(|&v| small.from_i64(v));
            prop_assert!(rank(&small, &fm) <= rank(&Rationals, &q(rows)));
        }

        #[test]
        fn repeated_row_has_zero_determinant(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 3), dup in 0usize..3) {
            let mut rows = rows;
            rows.push(rows[dup].clone());
            prop_assert_eq!(bareiss_determinant(&z(&rows)).unwrap(), BigInt::from(0));
            prop_assert_eq!(determinant(&Rationals, &q(rows)).unwrap(), qi(0));
        }
    }
}

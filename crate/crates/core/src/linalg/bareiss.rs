//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::LinalgError;

/// Determinant of an integer matrix by Bareiss elimination. Every division is exact.
pub fn bareiss_determinant(m: &Matrix<BigInt>) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for c in 0..n {
                let tmp = a[(k, c)].clone();
                a[(k, c)] = a[(p, c)].clone();
                a[(p, c)] = tmp;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn bareiss_rank(m: &Matrix<BigInt>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(p, j)].clone();
                a[(p, j)] = tmp;
            }
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[(i, j)] * &a[(r, c)] - &a[(i, c)] * &a[(r, j)];
                a[(i, j)] = num / &prev;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

use std::ops::{Index, IndexMut};

use super::field::Field;
use super::LinalgError;

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount { rows, cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(LinalgError::EntryCount { rows: r, cols: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Identity matrix over `f`.
pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

/// Row vector times matrix.
pub fn vec_mat<F: Field>(f: &F, v: &[F::Elem], m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.rows(), "vector length must equal row count");
    (0..m.cols())
        .map(|c| {
            (0..m.rows()).fold(f.zero(), |acc, r| {
                if f.is_zero(&v[r]) {
                    acc
                } else {
                    f.add(&acc, &f.mul(&v[r], &m[(r, c)]))
                }
            })
        })
        .collect()
}

/// Matrix times column vector.
pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.cols(), "vector length must equal column count");
    (0..m.rows())
        .map(|r| m.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
        .collect()
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !f.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(&a[(r, c)]).expect("pivot is nonzero");
        for j in c..a.cols() {
            a[(r, j)] = f.mul(&a[(r, j)], &inv);
        }
        for i in 0..a.rows() {
            if i == r || f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols() {
                if f.is_zero(&a[(r, j)]) {
                    continue;
                }
                let t = f.mul(&factor, &a[(r, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Exact rank by forward elimination.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !f.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(&a[(r, c)]).expect("pivot is nonzero");
        for i in r + 1..a.rows() {
            if f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = f.mul(&a[(i, c)], &inv);
            for j in c..a.cols() {
                if f.is_zero(&a[(r, j)]) {
                    continue;
                }
                let t = f.mul(&factor, &a[(r, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : m x = 0}` read off the reduced row echelon form: one vector
/// per free column, with a 1 in that column.
pub fn right_nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(f, m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols()];
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&reduced[(row, free)]);
            }
            v
        })
        .collect()
}

/// Basis of `{w : w m = 0}`; the right nullspace of the transpose.
pub fn left_nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    right_nullspace(f, &m.transpose())
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<F::Elem, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&a[(i, c)])) else {
            return Ok(f.zero());
        };
        if p != c {
            a.swap_rows(c, p);
            det = f.neg(&det);
        }
        det = f.mul(&det, &a[(c, c)]);
        let inv = f.inv(&a[(c, c)]).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = f.mul(&a[(i, c)], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[(c, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
    }
    Ok(det)
}

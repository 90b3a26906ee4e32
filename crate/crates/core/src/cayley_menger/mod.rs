//! The bordered bipartite Cayley-Menger matrix of `K_{5,5}` and its
//! determinant `f`.
//!
//! ```text
//!     | 0  1    1    1    1    1   |
//!     | 1  d05  d06  d07  d08  d09 |
//! M = | 1  d15  d16  d17  d18  d19 |
//!     | 1  d25  d26  d27  d28  d29 |
//!     | 1  d35  d36  d37  d38  d39 |
//!     | 1  d45  d46  d47  d48  d49 |
//! ```
//!
//! `M` is a submatrix of the Cayley-Menger matrix of ten points, so `f`
//! vanishes on every squared-length vector of a 3-dimensional `K_{5,5}`
//! framework. Each monomial of `f` uses four distinct left and four distinct
//! right indices; that support pattern is what forces a variable permutation
//! preserving `f` to map stars to stars.
//!
//! Irreducibility of `f` is taken as an external fact and not checked here.

mod poly;

pub use poly::{Monomial, SparsePolynomial, VariableId, LEFT, VARIABLES};

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("d_{0}{1} is not a K5,5 variable (need i < 5 <= j < 10)")]
    BadVariable(usize, usize),
    #[error("assignment is missing variable {0}")]
    MissingVariable(VariableId),
    #[error("assignment has {0} entries, expected {VARIABLES}")]
    AssignmentLength(usize),
    #[error("vertex map is not an automorphism of K5,5")]
    NotAutomorphism,
}

pub const SIZE: usize = LEFT + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmEntry {
    Zero,
    One,
    Var(VariableId),
}

impl CmEntry {
    fn to_polynomial(self) -> SparsePolynomial {
        match self {
            CmEntry::Zero => SparsePolynomial::zero(),
            CmEntry::One => SparsePolynomial::constant(1),
            CmEntry::Var(v) => SparsePolynomial::variable(v),
        }
    }
}

/// The 6x6 bordered matrix `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicCmMatrix {
    entries: [[CmEntry; SIZE]; SIZE],
}

impl SymbolicCmMatrix {
    pub fn entry(&self, r: usize, c: usize) -> CmEntry {
        self.entries[r][c]
    }
}

pub fn build_bordered_matrix() -> SymbolicCmMatrix {
    let mut entries = [[CmEntry::One; SIZE]; SIZE];
    entries[0][0] = CmEntry::Zero;
    for i in 0..LEFT {
        for j in LEFT..2 * LEFT {
            let v = VariableId::new(i, j).expect("indices in range");
            entries[1 + i][1 + j - LEFT] = CmEntry::Var(v);
        }
    }
    SymbolicCmMatrix { entries }
}

/// Determinant of a square polynomial matrix by Laplace expansion along the first row.
fn laplace_det(m: &[Vec<SparsePolynomial>]) -> SparsePolynomial {
    match m.len() {
        0 => SparsePolynomial::constant(1),
        1 => m[0][0].clone(),
        n => {
            let mut acc = SparsePolynomial::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<SparsePolynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&laplace_det(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Expands `det(M)` by eliminating the border first:
/// `det [[0, 1^T], [1, D]] = -sum_{i,j} (-1)^{i+j} det D_(i,j)`,
/// where `D_(i,j)` drops row `i` and column `j` of the 5x5 block `D`.
pub fn expand_determinant(m: &SymbolicCmMatrix) -> SparsePolynomial {
    let border_ok = m.entry(0, 0) == CmEntry::Zero
        && (1..SIZE).all(|k| m.entry(0, k) == CmEntry::One && m.entry(k, 0) == CmEntry::One);
    if !border_ok {
        return leibniz_expansion(m);
    }
    let block: Vec<Vec<SparsePolynomial>> =
        (1..SIZE).map(|r| (1..SIZE).map(|c| m.entry(r, c).to_polynomial()).collect()).collect();
    let mut f = SparsePolynomial::zero();
    for i in 0..LEFT {
        for j in 0..LEFT {
            let minor: Vec<Vec<SparsePolynomial>> = block
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let cofactor = laplace_det(&minor);
            f = if (i + j) % 2 == 0 { f.sub(&cofactor) } else { f.add(&cofactor) };
        }
    }
    f
}

/// Reference expansion: the signed sum over all `6!` permutations.
pub fn leibniz_expansion(m: &SymbolicCmMatrix) -> SparsePolynomial {
    fn walk(m: &SymbolicCmMatrix, row: usize, used: &mut [bool; SIZE], perm: &mut Vec<usize>, out: &mut SparsePolynomial) {
        if row == SIZE {
            let inversions = (0..SIZE).flat_map(|a| (a + 1..SIZE).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut term = SparsePolynomial::constant(if inversions % 2 == 0 { 1 } else { -1 });
            for (r, &c) in perm.iter().enumerate() {
                term = term.mul(&m.entry(r, c).to_polynomial());
                if term.is_zero() {
                    return;
                }
            }
            *out = out.add(&term);
            return;
        }
        for c in 0..SIZE {
            if !used[c] {
                used[c] = true;
                perm.push(c);
                walk(m, row + 1, used, perm, out);
                perm.pop();
                used[c] = false;
            }
        }
    }
    let mut out = SparsePolynomial::zero();
    walk(m, 0, &mut [false; SIZE], &mut Vec::with_capacity(SIZE), &mut out);
    out
}

/// True iff every monomial is a product of four variables with four
/// distinct left indices and four distinct right indices.
pub fn check_support_structure(f: &SparsePolynomial) -> bool {
    !f.is_empty()
        && f.terms().all(|(m, _)| {
            let vars = m.variables();
            let mut left = [false; LEFT];
            let mut right = [false; LEFT];
            vars.len() == 4
                && vars.iter().all(|v| {
                    let fresh = !left[v.left()] && !right[v.right() - LEFT];
                    left[v.left()] = true;
                    right[v.right() - LEFT] = true;
                    fresh
                })
        })
}

/// Evaluates `f` at an edge-indexed assignment of the 25 variables.
pub fn evaluate<F: Field>(f: &F, poly: &SparsePolynomial, assignment: &[F::Elem]) -> Result<F::Elem, CmError> {
    poly.evaluate(f, assignment)
}

/// The variable permutation induced by a vertex permutation of `K_{5,5}`,
/// or an error if `perm` does not preserve the bipartition.
pub fn induced_variable_map(perm: &[usize]) -> Result<impl Fn(VariableId) -> VariableId + '_, CmError> {
    if perm.len() != 2 * LEFT {
        return Err(CmError::NotAutomorphism);
    }
    let mut seen = [false; 2 * LEFT];
    for &p in perm {
        if p >= 2 * LEFT || seen[p] {
            return Err(CmError::NotAutomorphism);
        }
        seen[p] = true;
    }
    let side = |v: usize| v >= LEFT;
    let swaps = side(perm[0]);
    if (0..2 * LEFT).any(|v| side(perm[v]) != (side(v) ^ swaps)) {
        return Err(CmError::NotAutomorphism);
    }
    Ok(move |v: VariableId| {
        let (a, b) = (perm[v.left()], perm[v.right()]);
        VariableId::new(a.min(b), a.max(b)).expect("automorphism maps edges to edges")
    })
}

/// True iff the variable permutation induced by `perm` maps `f` to `f` or `-f`.
pub fn check_automorphism_action(f: &SparsePolynomial, perm: &[usize]) -> Result<bool, CmError> {
    let phi = induced_variable_map(perm)?;
    let image = f.map_variables(phi);
    Ok(image == *f || image == f.neg())
}

/// `grad f` evaluated at `point`, in canonical variable order.
pub fn gradient<F: Field>(f: &F, poly: &SparsePolynomial, point: &[F::Elem]) -> Result<Vec<F::Elem>, CmError> {
    VariableId::all().map(|v| poly.partial_derivative(v).evaluate(f, point)).collect()
}

/// Number of terms of `f`, exposed for reports.
pub fn term_count(f: &SparsePolynomial) -> usize {
    f.len()
}

/// Largest absolute coefficient, for reports.
pub fn max_abs_coefficient(f: &SparsePolynomial) -> BigInt {
    use num_traits::Signed;
    f.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

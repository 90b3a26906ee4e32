//! Sparse multivariate polynomials with integer coefficients in the
//! variables `d_ij` of `K_{5,5}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::CmError;
use crate::linalg::Field;

pub const LEFT: usize = 5;
pub const VARIABLES: usize = 25;

/// The squared length `d_ij` of edge `(i, j)` with `i` in `0..5`, `j` in `5..10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId {
    left: u8,
    right: u8,
}

impl VariableId {
    pub fn new(left: usize, right: usize) -> Result<Self, CmError> {
        if left >= LEFT || !(LEFT..2 * LEFT).contains(&right) {
            return Err(CmError::BadVariable(left, right));
        }
        Ok(VariableId { left: left as u8, right: right as u8 })
    }

    /// Variable at canonical `K_{5,5}` edge index `5 i + (j - 5)`.
    pub fn from_index(index: usize) -> Result<Self, CmError> {
        if index >= VARIABLES {
            return Err(CmError::BadVariable(index / LEFT, LEFT + index % LEFT));
        }
        Ok(VariableId { left: (index / LEFT) as u8, right: (LEFT + index % LEFT) as u8 })
    }

    pub fn left(&self) -> usize {
        self.left as usize
    }

    pub fn right(&self) -> usize {
        self.right as usize
    }

    pub fn index(&self) -> usize {
        LEFT * self.left() + self.right() - LEFT
    }

    pub fn all() -> impl Iterator<Item = VariableId> {
        (0..VARIABLES).map(|i| VariableId::from_index(i).expect("index in range"))
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}{}", self.left, self.right)
    }
}

/// Sorted multiset of variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<VariableId>);

impl Monomial {
    pub fn new(mut vars: Vec<VariableId>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.0.len() + other.0.len());
        vars.extend_from_slice(&self.0);
        vars.extend_from_slice(&other.0);
        Monomial::new(vars)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", names.join("*"))
    }
}

/// Map from monomial to nonzero integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), BigInt::from(c));
        p
    }

    pub fn variable(v: VariableId) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(vec![v]), BigInt::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Applies a variable substitution `v -> phi(v)` to every monomial.
    pub fn map_variables(&self, phi: impl Fn(VariableId) -> VariableId) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.0.iter().map(|&v| phi(v)).collect()), c.clone())),
        )
    }

    pub fn partial_derivative(&self, v: VariableId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = m.0.iter().filter(|&&x| x == v).count();
            if k == 0 {
                continue;
            }
            let mut vars = m.0.clone();
            let pos = vars.iter().position(|&x| x == v).expect("variable occurs");
            vars.remove(pos);
            out.add_term(Monomial(vars), c * BigInt::from(k));
        }
        out
    }

    /// Exact evaluation at `assignment`, indexed by canonical variable index.
    pub fn evaluate<F: Field>(&self, f: &F, assignment: &[F::Elem]) -> Result<F::Elem, CmError> {
        if assignment.len() < VARIABLES {
            return Err(CmError::MissingVariable(VariableId::from_index(assignment.len())?));
        }
        if assignment.len() > VARIABLES {
            return Err(CmError::AssignmentLength(assignment.len()));
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let term = m.0.iter().fold(f.from_integer(c), |t, v| f.mul(&t, &assignment[v.index()]));
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// `[{"monomial": ["d05", ...], "coefficient": c}, ...]` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let names: Vec<String> = m.0.iter().map(ToString::to_string).collect();
                    let coefficient = match c.to_i64() {
                        Some(v) => json!(v),
                        None => json!(c.to_string()),
                    };
                    json!({ "monomial": names, "coefficient": coefficient })
                })
                .collect(),
        )
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                write!(f, " ")?;
            }
            if mag.is_one() && m.degree() > 0 {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

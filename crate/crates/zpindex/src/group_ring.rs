//! The group algebra R = F_p[Z/p] in the g-power basis, together with
//! matrices over R.
//!
//! R is isomorphic to F_p[tau]/tau^p with tau = g^0 - g. The augmentation
//! eps sends every group element to 1, hence tau to 0.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use std::fmt;

/// An element of R, stored as the p coefficients of g^0, ..., g^{p-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl GroupRingElem {
    pub fn zero(field: PrimeField) -> Self {
        GroupRingElem {
            field,
            coeffs: vec![0; field.p() as usize],
        }
    }

    /// The identity g^0.
    pub fn one(field: PrimeField) -> Self {
        Self::generator_power(field, 0)
    }

    pub fn generator_power(field: PrimeField, k: usize) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[k % field.p() as usize] = 1;
        e
    }

    /// tau = g^0 - g.
    pub fn tau(field: PrimeField) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = 1;
        e.coeffs[1] = field.neg(1);
        e
    }

    pub fn tau_pow(field: PrimeField, k: usize) -> Self {
        let mut acc = Self::one(field);
        let t = Self::tau(field);
        for _ in 0..k {
            acc = acc.mul(&t);
        }
        acc
    }

    pub fn from_coeffs(field: PrimeField, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != field.p() as usize {
            return Err(Error::DimensionMismatch(format!(
                "group ring element needs exactly {} coefficients, got {}",
                field.p(),
                coeffs.len()
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.p()) {
            return Err(Error::OutOfRange(format!(
                "coefficient {} is not reduced mod {}",
                bad,
                field.p()
            )));
        }
        Ok(GroupRingElem { field, coeffs })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        GroupRingElem {
            field: self.field,
            coeffs,
        }
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        GroupRingElem {
            field: self.field,
            coeffs,
        }
    }

    /// Product in R: cyclic convolution of coefficient vectors.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let p = self.field.p() as usize;
        let mut coeffs = vec![0u64; p];
        for i in 0..p {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..p {
                let k = (i + j) % p;
                coeffs[k] = self
                    .field
                    .add(coeffs[k], self.field.mul(self.coeffs[i], other.coeffs[j]));
            }
        }
        GroupRingElem {
            field: self.field,
            coeffs,
        }
    }

    /// The augmentation eps: sum of coefficients mod p.
    pub fn augmentation(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0, |acc, &c| self.field.add(acc, c))
    }

    /// Matrix of left multiplication by self on R in the g-power basis:
    /// column j is the coefficient vector of self * g^j.
    pub fn left_mult_matrix(&self) -> Matrix {
        let p = self.field.p() as usize;
        let mut m = Matrix::zero(self.field, p, p);
        for i in 0..p {
            for j in 0..p {
                m.set(i, j, self.coeffs[(i + p - j) % p]);
            }
        }
        m
    }

    fn zip(&self, other: &Self, op: impl Fn(PrimeField, u64, u64) -> u64) -> Self {
        assert_eq!(self.field, other.field);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| op(self.field, a, b))
            .collect();
        GroupRingElem {
            field: self.field,
            coeffs,
        }
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, k) {
                (_, 0) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "g")?,
                (1, _) => write!(f, "g^{}", k)?,
                (_, 1) => write!(f, "{}g", c)?,
                (_, _) => write!(f, "{}g^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// A dense matrix with entries in R.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElem>,
}

impl RMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        RMatrix {
            field,
            rows,
            cols,
            entries: vec![GroupRingElem::zero(field); rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<GroupRingElem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        for row in &rows {
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(field.p(), e.field().p()));
                }
            }
        }
        Ok(RMatrix {
            field,
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElem) {
        assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &GroupRingElem) {
        let cur = self.get(i, j).add(v);
        self.entries[i * self.cols + j] = cur;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "R-matrix product dimension mismatch");
        let mut out = RMatrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.mul(other.get(k, j));
                    out.add_to(i, j, &term);
                }
            }
        }
        out
    }

    /// Applies the augmentation entrywise, yielding an F_p matrix.
    pub fn augmentation_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).augmentation());
            }
        }
        m
    }

    /// Expands to an F_p matrix of size (p*rows) x (p*cols): every R-entry
    /// becomes its left-multiplication block, so that the expanded matrix
    /// acts on the cell basis {generator x g-power}, generator-major.
    pub fn expand(&self) -> Matrix {
        let p = self.field.p() as usize;
        let mut m = Matrix::zero(self.field, self.rows * p, self.cols * p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                for a in 0..p {
                    for b in 0..p {
                        m.set(i * p + a, j * p + b, e.coeff((a + p - b) % p));
                    }
                }
            }
        }
        m
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} over F_{}[Z/{}] [", self.rows, self.cols, self.field.p(), self.field.p())?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "({})  ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn tau_powers_vanish_at_p() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            assert!(!GroupRingElem::tau_pow(field, p as usize - 1).is_zero());
            assert!(GroupRingElem::tau_pow(field, p as usize).is_zero());
        }
    }

    #[test]
    fn tau_squared_is_expected_polynomial() {
        // tau^2 = g^0 - 2g + g^2
        let field = f(5);
        let t2 = GroupRingElem::tau_pow(field, 2);
        assert_eq!(t2.coeffs(), &[1, 3, 1, 0, 0]);
        // and for p = 3 the same expression wraps to the norm element
        let t2 = GroupRingElem::tau_pow(f(3), 2);
        assert_eq!(t2.coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn augmentation_is_ring_map() {
        let field = f(5);
        let a = GroupRingElem::from_coeffs(field, vec![1, 2, 0, 4, 3]).unwrap();
        let b = GroupRingElem::from_coeffs(field, vec![0, 1, 1, 0, 2]).unwrap();
        assert_eq!(
            a.mul(&b).augmentation(),
            field.mul(a.augmentation(), b.augmentation())
        );
        assert_eq!(
            a.add(&b).augmentation(),
            field.add(a.augmentation(), b.augmentation())
        );
        assert_eq!(GroupRingElem::tau(field).augmentation(), 0);
    }

    #[test]
    fn left_mult_matrix_matches_ring_product() {
        let field = f(3);
        let a = GroupRingElem::from_coeffs(field, vec![1, 2, 0]).unwrap();
        let b = GroupRingElem::from_coeffs(field, vec![2, 0, 1]).unwrap();
        let prod = a.mul(&b);
        let via_matrix = a.left_mult_matrix().mul_vec(b.coeffs());
        assert_eq!(prod.coeffs(), &via_matrix[..]);
    }

    #[test]
    fn left_mult_by_tau_is_identity_minus_shift() {
        let m = GroupRingElem::tau(f(3)).left_mult_matrix();
        let expect = Matrix::from_rows(
            f(3),
            vec![vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]],
        )
        .unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn rmatrix_multiplication_respects_expansion() {
        let field = f(3);
        let tau = GroupRingElem::tau(field);
        let t2 = GroupRingElem::tau_pow(field, 2);
        let a = RMatrix::from_rows(field, vec![vec![tau.clone(), t2.clone()]]).unwrap();
        let b = RMatrix::from_rows(field, vec![vec![t2], vec![tau.neg()]]).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.get(0, 0).coeffs(), GroupRingElem::zero(field).coeffs());
        // expansion is functorial: expand(a*b) = expand(a)*expand(b)
        assert_eq!(prod.expand(), a.expand().mul(&b.expand()));
    }

    #[test]
    fn display_forms() {
        let field = f(5);
        assert_eq!(GroupRingElem::tau(field).to_string(), "1 + 4g");
        assert_eq!(GroupRingElem::zero(field).to_string(), "0");
        assert_eq!(GroupRingElem::generator_power(field, 3).to_string(), "g^3");
    }
}

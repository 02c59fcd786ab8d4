//! Exact dense linear algebra over the prime field F_p, p an odd prime.
//!
//! Everything here is deterministic: row reduction always picks the first
//! usable pivot, particular solutions set all free variables to zero, and
//! kernel bases follow the standard RREF null-space convention. Downstream
//! homology bases and lifts inherit this reproducibility.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field F_p. Construction checks that p is an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::NotOddPrime(p));
        }
        let mut d = 3;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotOddPrime(p));
            }
            d += 2;
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    /// Multiplicative inverse of a nonzero element, via Fermat.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Normalizes an integer in the open interval (-p, p) to {0,...,p-1}.
    /// Values outside that interval are rejected so that out-of-range file
    /// coefficients surface as errors rather than silently wrapping.
    pub fn reduce_signed(self, v: i64) -> Option<u64> {
        let p = self.p as i64;
        if v <= -p || v >= p {
            None
        } else if v < 0 {
            Some((v + p) as u64)
        } else {
            Some(v as u64)
        }
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A dense row-major matrix with entries reduced mod p.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.into_iter().flatten().map(|e| e % field.p()).collect();
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Single-column matrix from a vector.
    pub fn column(field: PrimeField, v: &[u64]) -> Self {
        let mut m = Matrix::zero(field, v.len(), 1);
        for (i, &e) in v.iter().enumerate() {
            m.set(i, 0, e % field.p());
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
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
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.field.p();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Matrix { entries, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Matrix { entries, ..*self }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.p();
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.entries[i * other.cols + j] + a * other.get(k, j);
                    out.entries[i * other.cols + j] = v % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let p = self.field.p();
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for j in 0..self.cols {
                acc = (acc + self.get(i, j) * v[j]) % p;
            }
            out[i] = acc;
        }
        out
    }

    /// Matrix power (square matrices only).
    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// New matrix from a subset of columns, in the given order.
    pub fn select_cols(&self, indices: &[usize]) -> Matrix {
        let mut m = Matrix::zero(self.field, self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    /// New matrix from a subset of rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let mut m = Matrix::zero(self.field, indices.len(), self.cols);
        for (ii, &i) in indices.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: u64) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row_i -= c * row_r
    fn row_sub_scaled(&mut self, i: usize, r: usize, c: u64) {
        for j in 0..self.cols {
            let v = self.field.sub(self.get(i, j), self.field.mul(c, self.get(r, j)));
            self.set(i, j, v);
        }
    }

    /// Reduced row echelon form with the canonical pivot order (first
    /// nonzero row below the cursor, columns left to right).
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| m.get(i, c) != 0);
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        m.row_sub_scaled(i, r, f);
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical particular solution of self * x = b, with all free
    /// variables set to zero. Returns None when b is outside the image.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs length {}",
                self.rows,
                b.len()
            )));
        }
        Ok(Solver::new(self).solve(b))
    }

    /// Canonical basis of ker(self): one column per free variable of the
    /// RREF, in increasing free-column order.
    pub fn kernel_basis(&self) -> Matrix {
        let ech = self.rref();
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let is_pivot = |c: usize| pivot_cols.binary_search(&c).is_ok();
        let free_cols: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot(c)).collect();
        let mut basis = Matrix::zero(self.field, self.cols, free_cols.len());
        for (k, &f) in free_cols.iter().enumerate() {
            basis.set(f, k, 1);
            for &(r, c) in &ech.pivots {
                basis.set(c, k, self.field.neg(ech.matrix.get(r, f)));
            }
        }
        basis
    }

    /// Basis of the column space: the pivot columns of self, in order.
    pub fn image_basis(&self) -> Matrix {
        let pivot_cols: Vec<usize> = self.rref().pivots.iter().map(|&(_, c)| c).collect();
        self.select_cols(&pivot_cols)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let ech = aug.rref();
        if ech.pivots.len() != n || ech.pivots.iter().any(|&(_, c)| c >= n) {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(ech.matrix.select_cols(&idx))
    }

    /// Left inverse of a matrix with independent columns: L with L*self = I.
    pub fn left_inverse(&self) -> Result<Matrix> {
        let k = self.cols;
        let pivot_rows: Vec<usize> = self
            .transpose()
            .rref()
            .pivots
            .iter()
            .map(|&(_, c)| c)
            .collect();
        if pivot_rows.len() != k {
            return Err(Error::Internal(
                "left_inverse of a matrix without independent columns".into(),
            ));
        }
        let square = self.select_rows(&pivot_rows);
        let inv = square
            .inverse()
            .ok_or_else(|| Error::Internal("pivot-row submatrix not invertible".into()))?;
        let mut l = Matrix::zero(self.field, k, self.rows);
        for i in 0..k {
            for (jj, &j) in pivot_rows.iter().enumerate() {
                l.set(i, j, inv.get(i, jj));
            }
        }
        Ok(l)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction: the reduced matrix and the (row, col) pivots.
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<(usize, usize)>,
}

/// Factored solver for repeated systems with the same left-hand side.
///
/// Row-reducing [A | I] once yields T with T*A in RREF; each solve is then
/// a single matrix-vector product plus a consistency check.
pub struct Solver {
    field: PrimeField,
    cols: usize,
    transform: Matrix,
    pivots: Vec<(usize, usize)>,
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let n = a.rows();
        let aug = a.hstack(&Matrix::identity(a.field(), n));
        let ech = aug.rref();
        let mut pivots = Vec::new();
        for &(r, c) in &ech.pivots {
            if c < a.cols() {
                pivots.push((r, c));
            }
        }
        let right: Vec<usize> = (a.cols()..a.cols() + n).collect();
        Solver {
            field: a.field(),
            cols: a.cols(),
            transform: ech.matrix.select_cols(&right),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical particular solution (free variables zero), or None.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let tb = self.transform.mul_vec(b);
        // rows below the last pivot row of A must have vanished
        for (r, &v) in tb.iter().enumerate() {
            if v != 0 && self.pivots.iter().all(|&(pr, _)| pr != r) {
                return None;
            }
        }
        let mut x = vec![0u64; self.cols];
        for &(r, c) in &self.pivots {
            x[c] = tb[r];
        }
        Some(x)
    }

    /// Solves for every column of b; None if any column is unsolvable.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let mut out = Matrix::zero(self.field, self.cols, b.cols());
        for j in 0..b.cols() {
            let x = self.solve(&b.col(j))?;
            for (i, &v) in x.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Whether b lies in the column space.
    pub fn contains(&self, b: &[u64]) -> bool {
        self.solve(b).is_some()
    }
}

/// A subquotient Z/B of an ambient F_p-space, with a chosen representative
/// basis and a lift map extracting quotient coordinates.
///
/// This is the carrier for homology: Z a space of cycles, B the boundaries
/// inside it.
#[derive(Clone)]
pub struct Subquotient {
    ambient_dim: usize,
    cycle_basis: Matrix,
    boundary_basis: Matrix,
    quotient_reps: Matrix,
    lift_map: Matrix,
}

impl Subquotient {
    /// Builds Z/B from a basis of Z (independent columns) and any spanning
    /// set of B. Fails if B is not contained in Z.
    pub fn new(cycle_basis: Matrix, boundaries_raw: &Matrix) -> Result<Self> {
        let field = cycle_basis.field();
        let ambient_dim = cycle_basis.rows();
        let k = cycle_basis.cols();
        if boundaries_raw.rows() != ambient_dim {
            return Err(Error::DimensionMismatch(
                "boundary columns live in a different ambient space".into(),
            ));
        }
        let z_solver = Solver::new(&cycle_basis);
        if z_solver.rank() != k {
            return Err(Error::Internal("cycle basis columns are dependent".into()));
        }
        let boundary_basis = boundaries_raw.image_basis();
        // boundaries in Z-coordinates
        let b_in_z = z_solver.solve_matrix(&boundary_basis).ok_or_else(|| {
            Error::NotInvariant("boundary space is not contained in the cycle space".into())
        })?;
        let l = b_in_z.cols();
        // complete B to a basis of Z: greedy pivots over [B | I]
        let aug = b_in_z.hstack(&Matrix::identity(field, k));
        let complement: Vec<usize> = aug
            .rref()
            .pivots
            .iter()
            .filter_map(|&(_, c)| if c >= l { Some(c - l) } else { None })
            .collect();
        let quotient_reps = cycle_basis.select_cols(&complement);
        // change of basis [B-basis | complement] on Z-coordinates
        let t = b_in_z.hstack(&Matrix::identity(field, k).select_cols(&complement));
        let lift_map = if k == 0 {
            Matrix::zero(field, 0, ambient_dim)
        } else {
            let t_inv = t
                .inverse()
                .ok_or_else(|| Error::Internal("subquotient basis change not invertible".into()))?;
            let quot_rows: Vec<usize> = (l..k).collect();
            t_inv.select_rows(&quot_rows).mul(&cycle_basis.left_inverse()?)
        };
        let sq = Subquotient {
            ambient_dim,
            cycle_basis,
            boundary_basis,
            quotient_reps,
            lift_map,
        };
        debug_assert!(sq.lift_map.mul(&sq.quotient_reps) == Matrix::identity(field, sq.dim()));
        debug_assert!(sq.lift_map.mul(&sq.boundary_basis).is_zero());
        Ok(sq)
    }

    pub fn dim(&self) -> usize {
        self.quotient_reps.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cycle_basis(&self) -> &Matrix {
        &self.cycle_basis
    }

    pub fn boundary_basis(&self) -> &Matrix {
        &self.boundary_basis
    }

    /// Chosen representative cycles, one column per quotient basis vector.
    pub fn quotient_reps(&self) -> &Matrix {
        &self.quotient_reps
    }

    /// Quotient coordinates of a vector of Z. Vanishes exactly on B.
    pub fn lift(&self, v: &[u64]) -> Vec<u64> {
        self.lift_map.mul_vec(v)
    }

    pub fn lift_matrix(&self) -> &Matrix {
        &self.lift_map
    }

    /// Matrix of the operator induced on Z/B by an ambient operator that
    /// preserves both Z and B (checked).
    pub fn induce(&self, op: &Matrix) -> Result<Matrix> {
        if op.rows() != self.ambient_dim || op.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, ambient dimension is {}",
                op.rows(),
                op.cols(),
                self.ambient_dim
            )));
        }
        let z_solver = Solver::new(&self.cycle_basis);
        let op_z = op.mul(&self.cycle_basis);
        if z_solver.solve_matrix(&op_z).is_none() {
            return Err(Error::NotInvariant(
                "operator does not preserve the cycle space".into(),
            ));
        }
        if self.boundary_basis.cols() > 0 {
            let b_solver = Solver::new(&self.boundary_basis);
            let op_b = op.mul(&self.boundary_basis);
            if b_solver.solve_matrix(&op_b).is_none() {
                return Err(Error::NotInvariant(
                    "operator does not preserve the boundary space".into(),
                ));
            }
        }
        Ok(self.lift_map.mul(&op.mul(&self.quotient_reps)))
    }
}

impl fmt::Debug for Subquotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subquotient(ambient={}, cycles={}, boundaries={}, dim={})",
            self.ambient_dim,
            self.cycle_basis.cols(),
            self.boundary_basis.cols(),
            self.dim()
        )
    }
}

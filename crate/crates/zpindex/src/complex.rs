//! Finite chain complexes of free R-modules, their F_p expansions, orbit
//! complexes, and the named built-in complexes.
//!
//! A complex is given by per-degree free ranks and boundary matrices with
//! group-ring entries. Expansion replaces every R-generator by p cells
//! {generator x g-power}; the orbit complex applies the augmentation
//! entrywise.

use crate::error::{Error, Result, Violation};
use crate::group_ring::{GroupRingElem, RMatrix};
use crate::linalg::{Matrix, PrimeField};

/// A finite chain complex of free R-modules.
///
/// `boundaries[n-1]` is the degree-n differential, a ranks[n-1] x ranks[n]
/// matrix over R. Construction checks shapes only; semantic invariants
/// (d∘d = 0, augmentation of the bottom differential, nonempty degree 0)
/// are reported by [`EquivariantComplex::validate`].
#[derive(Clone, PartialEq)]
pub struct EquivariantComplex {
    field: PrimeField,
    name: String,
    ranks: Vec<usize>,
    boundaries: Vec<RMatrix>,
}

impl EquivariantComplex {
    pub fn new(
        field: PrimeField,
        name: impl Into<String>,
        ranks: Vec<usize>,
        boundaries: Vec<RMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch(
                "a complex needs at least degree 0".into(),
            ));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.field() != field {
                return Err(Error::FieldMismatch(field.p(), b.field().p()));
            }
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary of degree {} must be {}x{}, got {}x{}",
                    k + 1,
                    ranks[k],
                    ranks[k + 1],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(EquivariantComplex {
            field,
            name: name.into(),
            ranks,
            boundaries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Top degree.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// The degree-n differential, 1 <= n <= dim.
    pub fn boundary(&self, n: usize) -> &RMatrix {
        &self.boundaries[n - 1]
    }

    pub fn boundaries(&self) -> &[RMatrix] {
        &self.boundaries
    }

    /// Checks the semantic invariants and returns every violation found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.ranks[0] == 0 {
            violations.push(Violation::at(0, "ranks[0] >= 1 required".to_string()));
        }
        if !self.boundaries.is_empty() {
            // the boundary of every 1-cell must be augmentation-free: the
            // column sums of eps(d1) vanish
            let eps = self.boundaries[0].augmentation_matrix();
            for a in 0..eps.cols() {
                let total = (0..eps.rows()).fold(0, |acc, i| self.field.add(acc, eps.get(i, a)));
                if total != 0 {
                    violations.push(Violation::at(
                        1,
                        format!("augmentation of the boundary of 1-cell {} is nonzero", a),
                    ));
                }
            }
        }
        for n in 2..=self.dim() {
            let prod = self.boundary(n - 1).mul(self.boundary(n));
            if !prod.is_zero() {
                violations.push(Violation::at(n, format!("d{} ∘ d{} != 0", n - 1, n)));
            }
        }
        violations
    }

    /// Errors with the collected violations unless the complex is valid.
    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidComplex(v))
        }
    }

    /// F_p realization: every R-generator becomes p cells, boundaries
    /// become left-multiplication blocks, and g acts by the cyclic shift.
    pub fn expand(&self) -> ExpandedComplex {
        let p = self.field.p() as usize;
        let dims = self.ranks.iter().map(|&r| r * p).collect();
        let boundaries = self.boundaries.iter().map(|b| b.expand()).collect();
        let g_action = self
            .ranks
            .iter()
            .map(|&r| {
                let shift = GroupRingElem::generator_power(self.field, 1).left_mult_matrix();
                block_diagonal(self.field, &shift, r)
            })
            .collect();
        ExpandedComplex {
            complex: FpChainComplex {
                field: self.field,
                dims,
                boundaries,
            },
            g_action,
        }
    }

    /// The orbit chain complex C_*(X) = C_*(X~) (x)_R F_p: dimensions are
    /// the ranks, boundaries the entrywise augmentation.
    pub fn orbit_complex(&self) -> FpChainComplex {
        FpChainComplex {
            field: self.field,
            dims: self.ranks.clone(),
            boundaries: self
                .boundaries
                .iter()
                .map(|b| b.augmentation_matrix())
                .collect(),
        }
    }
}

impl std::fmt::Debug for EquivariantComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EquivariantComplex({}, p={}, ranks={:?})",
            self.name,
            self.field.p(),
            self.ranks
        )
    }
}

fn block_diagonal(field: PrimeField, block: &Matrix, copies: usize) -> Matrix {
    let (br, bc) = (block.rows(), block.cols());
    let mut m = Matrix::zero(field, br * copies, bc * copies);
    for k in 0..copies {
        for i in 0..br {
            for j in 0..bc {
                m.set(k * br + i, k * bc + j, block.get(i, j));
            }
        }
    }
    m
}

/// A plain chain complex of F_p vector spaces.
#[derive(Clone, PartialEq)]
pub struct FpChainComplex {
    field: PrimeField,
    dims: Vec<usize>,
    boundaries: Vec<Matrix>,
}

impl FpChainComplex {
    pub fn new(field: PrimeField, dims: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch("degree/boundary count".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] || b.cols() != dims[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary of degree {}: expected {}x{}, got {}x{}",
                    k + 1,
                    dims[k],
                    dims[k + 1],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(FpChainComplex {
            field,
            dims,
            boundaries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, n: usize) -> &Matrix {
        &self.boundaries[n - 1]
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }

    pub fn is_valid(&self) -> bool {
        (2..=self.dim()).all(|n| self.boundary(n - 1).mul(self.boundary(n)).is_zero())
    }

    /// Euler characteristic from chain dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// The F_p expansion of an equivariant complex, carrying the generator
/// action in each degree.
#[derive(Clone)]
pub struct ExpandedComplex {
    complex: FpChainComplex,
    g_action: Vec<Matrix>,
}

impl ExpandedComplex {
    pub fn complex(&self) -> &FpChainComplex {
        &self.complex
    }

    pub fn field(&self) -> PrimeField {
        self.complex.field
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn dims(&self) -> &[usize] {
        self.complex.dims()
    }

    pub fn boundary(&self, n: usize) -> &Matrix {
        self.complex.boundary(n)
    }

    pub fn g_action(&self, n: usize) -> &Matrix {
        &self.g_action[n]
    }

    /// The tau-operator I - g in degree n.
    pub fn tau_action(&self, n: usize) -> Matrix {
        Matrix::identity(self.field(), self.complex.dims[n]).sub(&self.g_action[n])
    }

    /// Full invariant check, used by tests: the action has order p,
    /// commutes with the boundaries, is free, and d∘d = 0.
    pub fn check_invariants(&self) -> Result<()> {
        let p = self.field().p() as usize;
        for n in 0..=self.dim() {
            let g = &self.g_action[n];
            if g.pow(p) != Matrix::identity(self.field(), self.complex.dims[n]) {
                return Err(Error::Internal(format!("g^p != id in degree {}", n)));
            }
            let tau_rank = self.tau_action(n).pow(p - 1).rank();
            if tau_rank != self.complex.dims[n] / p {
                return Err(Error::Internal(format!(
                    "action is not free in degree {}",
                    n
                )));
            }
        }
        for n in 1..=self.dim() {
            let b = self.complex.boundary(n);
            if b.mul(&self.g_action[n]) != self.g_action[n - 1].mul(b) {
                return Err(Error::Internal(format!(
                    "boundary does not commute with g in degree {}",
                    n
                )));
            }
        }
        if !self.complex.is_valid() {
            return Err(Error::Internal("expanded d∘d != 0".into()));
        }
        Ok(())
    }
}

/// Named complexes: the free orbit, lens-space skeleta, and the two
/// three-dimensional counterexample complexes.
pub mod builders {
    use super::*;

    /// The orbit Z/p itself: one free generator in degree 0.
    pub fn point_orbit(field: PrimeField) -> EquivariantComplex {
        EquivariantComplex::new(field, "point", vec![1], vec![]).expect("static shape")
    }

    /// The k-skeleton of the standard periodic resolution: ranks all 1,
    /// differentials alternating tau (odd degree) and tau^{p-1} (even).
    pub fn lens(field: PrimeField, k: usize) -> EquivariantComplex {
        let ranks = vec![1; k + 1];
        let boundaries = (1..=k)
            .map(|n| {
                let e = resolution_differential(field, n);
                RMatrix::from_rows(field, vec![vec![e]]).expect("static shape")
            })
            .collect();
        EquivariantComplex::new(field, format!("lens({})", k), ranks, boundaries)
            .expect("static shape")
    }

    /// The differential of the standard periodic resolution in degree n:
    /// multiplication by tau for n odd, by tau^{p-1} for n even.
    pub fn resolution_differential(field: PrimeField, n: usize) -> GroupRingElem {
        if n % 2 == 1 {
            GroupRingElem::tau(field)
        } else {
            GroupRingElem::tau_pow(field, field.p() as usize - 1)
        }
    }

    /// Rank-one complex in degrees 0..3 with differentials tau, tau^{p-1},
    /// tau^2; has index 3 while its join with the point orbit has index 5.
    pub fn complex_u(field: PrimeField) -> EquivariantComplex {
        let tau = GroupRingElem::tau(field);
        let tpm1 = GroupRingElem::tau_pow(field, field.p() as usize - 1);
        let t2 = GroupRingElem::tau_pow(field, 2);
        let boundaries = vec![
            RMatrix::from_rows(field, vec![vec![tau]]).expect("static shape"),
            RMatrix::from_rows(field, vec![vec![tpm1]]).expect("static shape"),
            RMatrix::from_rows(field, vec![vec![t2]]).expect("static shape"),
        ];
        EquivariantComplex::new(field, "U", vec![1, 1, 1, 1], boundaries).expect("static shape")
    }

    /// Two-dimensional complex with ranks [1, 2, 1], d1 = (tau, 0) and
    /// d2 = (tau^{p-1}, -tau)^T; has index 3 and so does its join with the
    /// point orbit.
    pub fn complex_v(field: PrimeField) -> EquivariantComplex {
        let tau = GroupRingElem::tau(field);
        let tpm1 = GroupRingElem::tau_pow(field, field.p() as usize - 1);
        let zero = GroupRingElem::zero(field);
        let d1 = RMatrix::from_rows(field, vec![vec![tau.clone(), zero]]).expect("static shape");
        let d2 = RMatrix::from_rows(field, vec![vec![tpm1], vec![tau.neg()]]).expect("static shape");
        EquivariantComplex::new(field, "V", vec![1, 2, 1], vec![d1, d2]).expect("static shape")
    }

    /// Builder lookup by name, as used by the command line and file formats.
    pub fn builtin(name: &str, field: PrimeField, k: Option<usize>) -> Result<EquivariantComplex> {
        match name {
            "point" => Ok(point_orbit(field)),
            "lens" => {
                let k = k.ok_or_else(|| {
                    Error::OutOfRange("builtin 'lens' needs a skeleton degree k".into())
                })?;
                Ok(lens(field, k))
            }
            "U" => Ok(complex_u(field)),
            "V" => Ok(complex_v(field)),
            other => Err(Error::OutOfRange(format!(
                "unknown builtin complex '{}'; expected point, lens, U or V",
                other
            ))),
        }
    }
}

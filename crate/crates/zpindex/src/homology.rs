//! Homology of equivariant complexes: equivariant homology as R-modules,
//! orbit homology with chosen representative bases, and the map induced by
//! the orbit projection.

use crate::complex::{EquivariantComplex, FpChainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, Subquotient};
use crate::rmodule::{JordanType, RModule};

/// Per-degree homology subquotients of a plain F_p chain complex, with the
/// canonical RREF representative bases.
pub fn fp_homology(c: &FpChainComplex) -> Result<Vec<Subquotient>> {
    let d = c.dim();
    (0..=d)
        .map(|n| {
            let cycles = if n == 0 {
                Matrix::identity(c.field(), c.dims()[0])
            } else {
                c.boundary(n).kernel_basis()
            };
            let boundaries = if n == d {
                Matrix::zero(c.field(), c.dims()[n], 0)
            } else {
                c.boundary(n + 1).clone()
            };
            Subquotient::new(cycles, &boundaries).map_err(|e| {
                Error::Internal(format!("homology subquotient at degree {}: {}", n, e))
            })
        })
        .collect()
}

/// One degree of equivariant homology: the subquotient of the expanded
/// complex together with the induced R-module structure.
#[derive(Clone)]
pub struct EquivariantHomology {
    pub subquotient: Subquotient,
    pub module: RModule,
    pub jordan: JordanType,
}

impl EquivariantHomology {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// One degree of orbit homology.
#[derive(Clone)]
pub struct OrbitHomology {
    pub subquotient: Subquotient,
}

impl OrbitHomology {
    pub fn dim(&self) -> usize {
        self.subquotient.dim()
    }
}

/// The full homology table of a complex: equivariant entries (R-modules
/// with their Jordan types) and orbit entries, per degree, plus the
/// matrices induced by the orbit projection on homology.
pub struct HomologyTable {
    field: PrimeField,
    pub equivariant: Vec<EquivariantHomology>,
    pub orbit: Vec<OrbitHomology>,
    projections: Vec<Matrix>,
}

impl HomologyTable {
    pub fn compute(c: &EquivariantComplex) -> Result<Self> {
        c.ensure_valid()?;
        let expanded = c.expand();
        let equivariant = fp_homology(expanded.complex())?
            .into_iter()
            .enumerate()
            .map(|(n, sq)| {
                let tau = expanded.tau_action(n);
                let induced = sq.induce(&tau).map_err(|e| {
                    Error::Internal(format!("tau is not invariant in degree {}: {}", n, e))
                })?;
                let module = RModule::new(c.field(), induced)?;
                let jordan = module.jordan_type();
                Ok(EquivariantHomology {
                    subquotient: sq,
                    module,
                    jordan,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let orbit = fp_homology(&c.orbit_complex())?
            .into_iter()
            .map(|subquotient| OrbitHomology { subquotient })
            .collect::<Vec<_>>();
        let projections = (0..=c.dim())
            .map(|n| {
                induced_projection(
                    c,
                    n,
                    &equivariant[n].subquotient,
                    &orbit[n].subquotient,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyTable {
            field: c.field(),
            equivariant,
            orbit,
            projections,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.equivariant.len() - 1
    }

    pub fn equivariant_dims(&self) -> Vec<usize> {
        self.equivariant.iter().map(|e| e.dim()).collect()
    }

    pub fn jordan_types(&self) -> Vec<JordanType> {
        self.equivariant.iter().map(|e| e.jordan.clone()).collect()
    }

    pub fn orbit_dims(&self) -> Vec<usize> {
        self.orbit.iter().map(|o| o.dim()).collect()
    }

    /// Orbit homology dimensions with degree 0 reduced.
    pub fn orbit_reduced_dims(&self) -> Vec<usize> {
        let mut dims = self.orbit_dims();
        dims[0] = dims[0].saturating_sub(1);
        dims
    }

    /// The matrix of q_*: H_n(total) -> H_n(orbit).
    pub fn projection(&self, n: usize) -> &Matrix {
        &self.projections[n]
    }

    /// Whether the orbit space is connected (orbit H_0 has dimension 1).
    pub fn connected(&self) -> bool {
        self.orbit[0].dim() == 1
    }
}

/// Equivariant homology only: per degree, H_n(X~) as an R-module.
pub fn equivariant_homology(c: &EquivariantComplex) -> Result<Vec<EquivariantHomology>> {
    Ok(HomologyTable::compute(c)?.equivariant)
}

/// Orbit homology only: per degree, H_n(X) with representative bases.
pub fn orbit_homology(c: &EquivariantComplex) -> Result<Vec<OrbitHomology>> {
    c.ensure_valid()?;
    Ok(fp_homology(&c.orbit_complex())?
        .into_iter()
        .map(|subquotient| OrbitHomology { subquotient })
        .collect())
}

/// The chain-level orbit projection in degree n: sends the expanded cell
/// (generator, g-power) to the orbit cell (generator).
pub fn projection_chain_matrix(c: &EquivariantComplex, n: usize) -> Matrix {
    let p = c.field().p() as usize;
    let r = c.rank(n);
    let mut m = Matrix::zero(c.field(), r, r * p);
    for a in 0..r {
        for e in 0..p {
            m.set(a, a * p + e, 1);
        }
    }
    m
}

fn induced_projection(
    c: &EquivariantComplex,
    n: usize,
    total: &Subquotient,
    orbit: &Subquotient,
) -> Result<Matrix> {
    let q = projection_chain_matrix(c, n);
    let reps = total.quotient_reps();
    let mut out = Matrix::zero(c.field(), orbit.dim(), total.dim());
    for j in 0..reps.cols() {
        let image = q.mul_vec(&reps.col(j));
        let coords = orbit.lift(&image);
        for (i, &v) in coords.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// The matrix of q_* on homology in a single degree.
pub fn orbit_projection_induced(c: &EquivariantComplex, n: usize) -> Result<Matrix> {
    if n > c.dim() {
        return Err(Error::OutOfRange(format!(
            "degree {} exceeds complex dimension {}",
            n,
            c.dim()
        )));
    }
    Ok(HomologyTable::compute(c)?.projections[n].clone())
}

//! The cohomological index.
//!
//! A valid complex C admits a chain map into the standard periodic
//! resolution P of F_p over R (differentials alternating tau and
//! tau^{p-1}) lifting the identity augmentation. Passing to orbit level
//! and to homology, the induced functionals hit F_p in an initial segment
//! of degrees; the index is the length of that segment.

use crate::complex::{builders, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::linalg::{Matrix, Solver};
use crate::rng::subrng;
use rand::Rng;
use serde::Serialize;

/// A degreewise lift of the augmentation into the standard resolution:
/// for each degree n a row of group-ring values, one per generator.
#[derive(Clone)]
pub struct ResolutionLift {
    maps: Vec<Vec<GroupRingElem>>,
}

impl ResolutionLift {
    pub fn map(&self, n: usize) -> &[GroupRingElem] {
        &self.maps[n]
    }

    pub fn maps(&self) -> &[Vec<GroupRingElem>] {
        &self.maps
    }

    /// Re-checks the chain-map identity d^P_n ∘ phi_n = phi_{n-1} ∘ d_n
    /// and the unit augmentation in degree 0, as exact group-ring
    /// identities.
    pub fn verify(&self, c: &EquivariantComplex) -> Result<()> {
        let field = c.field();
        for phi in &self.maps[0] {
            if phi.augmentation() != 1 {
                return Err(Error::Internal(
                    "lift does not have unit augmentation in degree 0".into(),
                ));
            }
        }
        for n in 1..=c.dim() {
            let step = builders::resolution_differential(field, n);
            let d = c.boundary(n);
            for a in 0..c.rank(n) {
                let lhs = step.mul(&self.maps[n][a]);
                let mut rhs = GroupRingElem::zero(field);
                for i in 0..c.rank(n - 1) {
                    rhs = rhs.add(&self.maps[n - 1][i].mul(d.get(i, a)));
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "chain-map identity fails at degree {}, generator {}",
                        n, a
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How a lifting step picks its solution of the resolution equation.
enum LiftStyle {
    Canonical,
    Randomized { seed: u64 },
}

fn lift_with_style(c: &EquivariantComplex, style: LiftStyle) -> Result<ResolutionLift> {
    c.ensure_valid()?;
    let field = c.field();
    let mut maps: Vec<Vec<GroupRingElem>> = Vec::with_capacity(c.dim() + 1);
    maps.push(vec![GroupRingElem::one(field); c.rank(0)]);
    for n in 1..=c.dim() {
        let step = builders::resolution_differential(field, n);
        let step_matrix = step.left_mult_matrix();
        let solver = Solver::new(&step_matrix);
        let kernel = step_matrix.kernel_basis();
        let d = c.boundary(n);
        let mut row = Vec::with_capacity(c.rank(n));
        for a in 0..c.rank(n) {
            let mut rhs = GroupRingElem::zero(field);
            for i in 0..c.rank(n - 1) {
                rhs = rhs.add(&maps[n - 1][i].mul(d.get(i, a)));
            }
            // solvable for every valid complex; anything else is a bug
            let mut x = solver.solve(rhs.coeffs()).ok_or_else(|| {
                Error::Internal(format!(
                    "resolution lift unsolvable at degree {}, generator {}",
                    n, a
                ))
            })?;
            if let LiftStyle::Randomized { seed } = style {
                let mut rng = subrng(seed, &[0x4c49_4654, n as u64, a as u64]);
                for j in 0..kernel.cols() {
                    let coeff = rng.gen_range(0..field.p());
                    let col = kernel.col(j);
                    for (xi, ki) in x.iter_mut().zip(col) {
                        *xi = field.add(*xi, field.mul(coeff, ki));
                    }
                }
            }
            row.push(GroupRingElem::from_coeffs(field, x)?);
        }
        maps.push(row);
    }
    let lift = ResolutionLift { maps };
    lift.verify(c)?;
    Ok(lift)
}

/// The canonical classifying lift: degree 0 sends every generator to g^0,
/// and each step takes the particular solution with free variables zero.
pub fn classifying_lift(c: &EquivariantComplex) -> Result<ResolutionLift> {
    lift_with_style(c, LiftStyle::Canonical)
}

/// A lift whose positive-degree steps add a seeded random element of the
/// solution space. Any two lifts are chain homotopic, so the resulting
/// index report is the same; tests rely on this.
pub fn classifying_lift_randomized(c: &EquivariantComplex, seed: u64) -> Result<ResolutionLift> {
    lift_with_style(c, LiftStyle::Randomized { seed })
}

/// The outcome of an index computation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IndexReport {
    /// Whether the orbit space is connected (orbit H_0 of dimension 1).
    pub connected: bool,
    /// Per degree, the induced functional on orbit chains: generator a
    /// maps to the augmentation of the lift value at a.
    pub functionals: Vec<Vec<u64>>,
    /// index - 1.
    pub height: usize,
    /// Per degree, whether the functional is nonzero on the cycle space of
    /// the orbit complex. Always an initial segment of trues.
    pub hit_flags: Vec<bool>,
    /// Number of degrees, starting at 0, in which the classifying map is
    /// nonzero on orbit homology.
    pub index: usize,
}

/// Computes the index report using the canonical lift.
pub fn index_report(c: &EquivariantComplex) -> Result<IndexReport> {
    let lift = classifying_lift(c)?;
    index_report_from_lift(c, &lift)
}

/// Computes the index report from an explicitly provided lift.
pub fn index_report_from_lift(c: &EquivariantComplex, lift: &ResolutionLift) -> Result<IndexReport> {
    c.ensure_valid()?;
    let field = c.field();
    let orbit = c.orbit_complex();
    let functionals: Vec<Vec<u64>> = (0..=c.dim())
        .map(|n| lift.map(n).iter().map(|e| e.augmentation()).collect())
        .collect();
    let mut hit_flags = Vec::with_capacity(c.dim() + 1);
    for n in 0..=c.dim() {
        let cycles = if n == 0 {
            Matrix::identity(field, orbit.dims()[0])
        } else {
            orbit.boundary(n).kernel_basis()
        };
        let psi = &functionals[n];
        let hit = (0..cycles.cols()).any(|j| {
            cycles
                .col(j)
                .iter()
                .zip(psi)
                .fold(0, |acc, (&z, &f)| field.add(acc, field.mul(z, f)))
                != 0
        });
        hit_flags.push(hit);
    }
    // no-gaps: the flags must form an initial segment
    let index = hit_flags.iter().take_while(|&&h| h).count();
    if hit_flags[index..].iter().any(|&h| h) {
        return Err(Error::Internal(format!(
            "gap in the image of the classifying map: flags {:?}",
            hit_flags
        )));
    }
    if index == 0 {
        return Err(Error::Internal(
            "degree 0 must always be hit on a nonempty complex".into(),
        ));
    }
    let h0 = if c.dim() == 0 {
        orbit.dims()[0]
    } else {
        orbit.dims()[0] - orbit.boundary(1).rank()
    };
    Ok(IndexReport {
        connected: h0 == 1,
        functionals,
        height: index - 1,
        hit_flags,
        index,
    })
}

/// The index alone.
pub fn index_of(c: &EquivariantComplex) -> Result<usize> {
    Ok(index_report(c)?.index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builders::*;
    use crate::join::{join, join_with_point};
    use crate::linalg::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn lens_skeleta_have_index_degree_plus_one() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            for k in 0..=6 {
                assert_eq!(
                    index_of(&lens(field, k)).unwrap(),
                    k + 1,
                    "lens({}) at p={}",
                    k,
                    p
                );
            }
        }
    }

    #[test]
    fn lens_lift_is_identity_row() {
        // the truncated resolution maps to the resolution by the identity
        let field = f(3);
        let lift = classifying_lift(&lens(field, 4)).unwrap();
        for n in 0..=4 {
            assert_eq!(lift.map(n), &[GroupRingElem::one(field)]);
        }
    }

    #[test]
    fn point_orbit_has_index_one() {
        let report = index_report(&point_orbit(f(5))).unwrap();
        assert_eq!(report.index, 1);
        assert_eq!(report.height, 0);
        assert!(report.connected);
        assert_eq!(report.hit_flags, vec![true]);
    }

    #[test]
    fn join_of_points_has_index_two() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            let j = join(&point_orbit(field), &point_orbit(field)).unwrap();
            assert_eq!(index_of(&j).unwrap(), 2, "p = {}", p);
        }
    }

    #[test]
    fn u_realizes_the_upper_bound() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            let u = complex_u(field);
            assert_eq!(index_of(&u).unwrap(), 3, "p = {}", p);
            assert_eq!(index_of(&join_with_point(&u).unwrap()).unwrap(), 5, "p = {}", p);
        }
    }

    #[test]
    fn v_realizes_the_lower_bound() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            let v = complex_v(field);
            assert_eq!(index_of(&v).unwrap(), 3, "p = {}", p);
            assert_eq!(index_of(&join_with_point(&v).unwrap()).unwrap(), 3, "p = {}", p);
        }
    }

    #[test]
    fn u_lift_satisfies_chain_identity() {
        // run the lifting algorithm, then verify the identity by direct
        // group-ring multiplication
        let field = f(3);
        let u = complex_u(field);
        let lift = classifying_lift(&u).unwrap();
        lift.verify(&u).unwrap();
        // degree-by-degree re-check with raw products
        for n in 1..=3 {
            let step = resolution_differential(field, n);
            let lhs = step.mul(&lift.map(n)[0]);
            let rhs = lift.map(n - 1)[0].mul(u.boundary(n).get(0, 0));
            assert_eq!(lhs, rhs, "degree {}", n);
        }
    }

    #[test]
    fn randomized_lift_gives_same_report() {
        let field = f(3);
        for c in [
            complex_u(field),
            complex_v(field),
            join_with_point(&complex_u(field)).unwrap(),
            lens(field, 4),
        ] {
            let canonical = index_report(&c).unwrap();
            for seed in [1u64, 2, 99] {
                let lift = classifying_lift_randomized(&c, seed).unwrap();
                let report = index_report_from_lift(&c, &lift).unwrap();
                assert_eq!(report.hit_flags, canonical.hit_flags, "{:?} seed {}", c, seed);
                assert_eq!(report.index, canonical.index);
            }
        }
    }

    #[test]
    fn invalid_complex_is_rejected() {
        let field = f(3);
        let one = crate::group_ring::GroupRingElem::one(field);
        let d1 = crate::group_ring::RMatrix::from_rows(field, vec![vec![one]]).unwrap();
        let bad = EquivariantComplex::new(field, "bad", vec![1, 1], vec![d1]).unwrap();
        assert!(matches!(index_report(&bad), Err(Error::InvalidComplex(_))));
    }
}

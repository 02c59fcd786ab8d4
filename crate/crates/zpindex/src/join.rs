//! The join of two free equivariant complexes.
//!
//! Cells of the join are the cells of either factor plus one cell e*f for
//! each pair, in degree deg(e) + deg(f) + 1. The boundary of a pair cell
//! is
//!
//! ```text
//!   d(e*f) = f - e                          deg e = deg f = 0
//!   d(e*f) = f - e*(df)                     deg e = 0, deg f > 0
//!   d(e*f) = (de)*f + (-1)^{m+1} e          deg e = m > 0, deg f = 0
//!   d(e*f) = (de)*f + (-1)^{m+1} e*(df)     otherwise
//! ```
//!
//! The construction works on the expanded complexes with the diagonal
//! action g(x*y) = gx * gy, which makes equivariance automatic, and then
//! reads the free R-matrices off the orbit representatives {a * (g^m b)}.
//! The result is re-expanded and compared with the direct construction,
//! and its rank bookkeeping is checked against the product formula.

use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElem, RMatrix};
use crate::linalg::Matrix;

/// Cell bookkeeping for one degree of the join, in the fixed basis order:
/// left cells, then right cells, then pair cells by (left degree, left
/// generator, right generator, twist).
struct JoinLayout {
    p: usize,
    rx: Vec<usize>,
    ry: Vec<usize>,
}

impl JoinLayout {
    fn rank_left(&self, n: usize) -> usize {
        self.rx.get(n).copied().unwrap_or(0)
    }

    fn rank_right(&self, n: usize) -> usize {
        self.ry.get(n).copied().unwrap_or(0)
    }

    /// Number of pair R-generators of degree n with left degree < i.
    fn pair_offset(&self, n: usize, i: usize) -> usize {
        (0..i)
            .map(|ii| {
                let j = n - 1 - ii;
                self.rank_left(ii) * self.rank_right(j) * self.p
            })
            .sum()
    }

    fn rank(&self, n: usize) -> usize {
        self.rank_left(n) + self.rank_right(n) + if n == 0 { 0 } else { self.pair_offset(n, n) }
    }

    /// Expanded-cell index of the left factor cell (generator*p + power).
    fn left_cell(&self, _n: usize, xcell: usize) -> usize {
        xcell
    }

    fn right_cell(&self, n: usize, ycell: usize) -> usize {
        self.rank_left(n) * self.p + ycell
    }

    /// Expanded-cell index of the pair of an i-cell of the left factor and
    /// an (n-1-i)-cell of the right factor.
    fn pair_cell(&self, n: usize, i: usize, xcell: usize, ycell: usize) -> usize {
        let p = self.p;
        let j = n - 1 - i;
        let (a, s) = (xcell / p, xcell % p);
        let (b, t) = (ycell / p, ycell % p);
        let m = (t + p - s) % p;
        let gen = self.rank_left(n)
            + self.rank_right(n)
            + self.pair_offset(n, i)
            + (a * self.rank_right(j) + b) * p
            + m;
        gen * p + s
    }
}

/// The join of two valid complexes over the same field, as a valid
/// equivariant complex.
pub fn join(cx: &EquivariantComplex, cy: &EquivariantComplex) -> Result<EquivariantComplex> {
    if cx.field() != cy.field() {
        return Err(Error::FieldMismatch(cx.field().p(), cy.field().p()));
    }
    cx.ensure_valid()?;
    cy.ensure_valid()?;
    let field = cx.field();
    let p = field.p() as usize;
    let layout = JoinLayout {
        p,
        rx: cx.ranks().to_vec(),
        ry: cy.ranks().to_vec(),
    };
    let ex = cx.expand();
    let ey = cy.expand();
    let dim = cx.dim() + cy.dim() + 1;
    let ranks: Vec<usize> = (0..=dim).map(|n| layout.rank(n)).collect();

    // direct expanded construction
    let mut expanded: Vec<Matrix> = Vec::with_capacity(dim);
    for n in 1..=dim {
        let mut b = Matrix::zero(field, ranks[n - 1] * p, ranks[n] * p);
        // left factor cells
        if n <= cx.dim() {
            let xb = ex.boundary(n);
            for col in 0..xb.cols() {
                for row in 0..xb.rows() {
                    let c = xb.get(row, col);
                    if c != 0 {
                        b.set(layout.left_cell(n - 1, row), layout.left_cell(n, col), c);
                    }
                }
            }
        }
        // right factor cells
        if n <= cy.dim() {
            let yb = ey.boundary(n);
            for col in 0..yb.cols() {
                for row in 0..yb.rows() {
                    let c = yb.get(row, col);
                    if c != 0 {
                        b.set(
                            layout.right_cell(n - 1, row),
                            layout.right_cell(n, col),
                            c,
                        );
                    }
                }
            }
        }
        // pair cells
        for i in 0..n {
            let j = n - 1 - i;
            if i > cx.dim() || j > cy.dim() {
                continue;
            }
            let sign = if (i + 1) % 2 == 0 { 1 } else { field.neg(1) };
            for xcell in 0..ex.dims()[i] {
                for ycell in 0..ey.dims()[j] {
                    let col = layout.pair_cell(n, i, xcell, ycell);
                    match (i, j) {
                        (0, 0) => {
                            let rr = layout.right_cell(0, ycell);
                            b.set(rr, col, field.add(b.get(rr, col), 1));
                            let lr = layout.left_cell(0, xcell);
                            b.set(lr, col, field.sub(b.get(lr, col), 1));
                        }
                        (0, _) => {
                            let rr = layout.right_cell(n - 1, ycell);
                            b.set(rr, col, field.add(b.get(rr, col), 1));
                            let yb = ey.boundary(j);
                            for w in 0..yb.rows() {
                                let c = yb.get(w, ycell);
                                if c != 0 {
                                    let r = layout.pair_cell(n - 1, 0, xcell, w);
                                    b.set(r, col, field.sub(b.get(r, col), c));
                                }
                            }
                        }
                        (_, 0) => {
                            let xb = ex.boundary(i);
                            for v in 0..xb.rows() {
                                let c = xb.get(v, xcell);
                                if c != 0 {
                                    let r = layout.pair_cell(n - 1, i - 1, v, ycell);
                                    b.set(r, col, field.add(b.get(r, col), c));
                                }
                            }
                            let lr = layout.left_cell(n - 1, xcell);
                            b.set(lr, col, field.add(b.get(lr, col), sign));
                        }
                        (_, _) => {
                            let xb = ex.boundary(i);
                            for v in 0..xb.rows() {
                                let c = xb.get(v, xcell);
                                if c != 0 {
                                    let r = layout.pair_cell(n - 1, i - 1, v, ycell);
                                    b.set(r, col, field.add(b.get(r, col), c));
                                }
                            }
                            let yb = ey.boundary(j);
                            for w in 0..yb.rows() {
                                let c = yb.get(w, ycell);
                                if c != 0 {
                                    let r = layout.pair_cell(n - 1, i, xcell, w);
                                    b.set(r, col, field.add(b.get(r, col), field.mul(sign, c)));
                                }
                            }
                        }
                    }
                }
            }
        }
        expanded.push(b);
    }

    // recover the R-matrices from the exponent-zero columns
    let mut boundaries: Vec<RMatrix> = Vec::with_capacity(dim);
    for n in 1..=dim {
        let b = &expanded[n - 1];
        let mut rm = RMatrix::zero(field, ranks[n - 1], ranks[n]);
        for u in 0..ranks[n] {
            let col = u * p;
            for row in 0..b.rows() {
                let c = b.get(row, col);
                if c != 0 {
                    let term = GroupRingElem::generator_power(field, row % p).scalar_mul(c);
                    rm.add_to(row / p, u, &term);
                }
            }
        }
        boundaries.push(rm);
    }

    let name = format!("join({},{})", cx.name(), cy.name());
    let result = EquivariantComplex::new(field, name, ranks.clone(), boundaries)?;
    result.ensure_valid().map_err(|e| {
        Error::Internal(format!("join output failed validation: {}", e))
    })?;

    // both routes must agree: re-expansion reproduces the direct matrices
    let re = result.expand();
    for n in 1..=dim {
        if re.boundary(n) != &expanded[n - 1] {
            return Err(Error::Internal(format!(
                "join expansion mismatch in degree {}",
                n
            )));
        }
    }
    // rank bookkeeping against the product formula
    for n in 0..=dim {
        let pairs: usize = (0..n)
            .map(|i| cx.rank(i) * cy.rank(n - 1 - i))
            .sum();
        if ranks[n] != cx.rank(n) + cy.rank(n) + p * pairs {
            return Err(Error::Internal(format!(
                "join rank formula violated in degree {}",
                n
            )));
        }
    }
    Ok(result)
}

/// join(c, point orbit): every counterexample in the reproduction suite
/// uses this form.
pub fn join_with_point(c: &EquivariantComplex) -> Result<EquivariantComplex> {
    join(c, &crate::complex::builders::point_orbit(c.field()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builders::*;
    use crate::homology::HomologyTable;
    use crate::linalg::PrimeField;
    use crate::rmodule::{JordanType, RModule};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn jt(blocks: &[(usize, usize)]) -> JordanType {
        JordanType::from_blocks(blocks)
    }

    #[test]
    fn join_of_two_point_orbits() {
        for p in [3u64, 5] {
            let field = f(p);
            let j = join(&point_orbit(field), &point_orbit(field)).unwrap();
            assert_eq!(j.ranks(), &[2, p as usize]);
            let table = HomologyTable::compute(&j).unwrap();
            // reduced orbit homology: [0, p-1]
            assert_eq!(table.orbit_reduced_dims(), vec![0, p as usize - 1]);
            // oracle: Euler characteristic of the orbit complex
            let chi = 2i64 - p as i64;
            assert_eq!(1 - table.orbit_dims()[1] as i64, chi);
        }
    }

    #[test]
    fn join_field_mismatch_is_error() {
        assert!(join(&point_orbit(f(3)), &point_orbit(f(5))).is_err());
    }

    #[test]
    fn join_u_with_point_equivariant_table() {
        // H_0 = tau^{p-1}R, H_3 = tauR, H_4 = tau^2 R (+) R, else 0
        for p in [3u64, 5, 7] {
            let ps = p as usize;
            let j = join_with_point(&complex_u(f(p))).unwrap();
            let table = HomologyTable::compute(&j).unwrap();
            assert_eq!(
                table.jordan_types(),
                vec![
                    jt(&[(1, 1)]),
                    jt(&[]),
                    jt(&[]),
                    jt(&[(ps - 1, 1)]),
                    jt(&[(ps - 2, 1), (ps, 1)]),
                ],
                "p = {}",
                p
            );
            assert_eq!(table.orbit_reduced_dims(), vec![0, 1, 1, 2, 2]);
        }
    }

    #[test]
    fn join_v_with_point_equivariant_table() {
        for p in [3u64, 5, 7] {
            let ps = p as usize;
            let j = join_with_point(&complex_v(f(p))).unwrap();
            let table = HomologyTable::compute(&j).unwrap();
            assert_eq!(
                table.jordan_types(),
                vec![
                    jt(&[(1, 1)]),
                    jt(&[]),
                    jt(&[(ps - 2, 1), (ps, 1)]),
                    jt(&[(ps - 1, 1)]),
                ],
                "p = {}",
                p
            );
            assert_eq!(table.orbit_reduced_dims(), vec![0, 1, 2, 1]);
        }
    }

    #[test]
    fn join_of_lens_skeleta_matches_bigger_lens() {
        // for k odd the join of skeleta is the (k+l+1)-skeleton
        let field = f(3);
        for (k, l) in [(1usize, 0usize), (1, 1), (1, 2), (3, 0)] {
            let j = join(&lens(field, k), &lens(field, l)).unwrap();
            let expect = lens(field, k + l + 1);
            let tj = HomologyTable::compute(&j).unwrap();
            let te = HomologyTable::compute(&expect).unwrap();
            assert_eq!(tj.jordan_types(), te.jordan_types(), "k={}, l={}", k, l);
            assert_eq!(tj.orbit_dims(), te.orbit_dims(), "k={}, l={}", k, l);
        }
    }

    #[test]
    fn join_homology_is_symmetric() {
        let field = f(3);
        let a = complex_u(field);
        let b = complex_v(field);
        let tab = HomologyTable::compute(&join(&a, &b).unwrap()).unwrap();
        let tba = HomologyTable::compute(&join(&b, &a).unwrap()).unwrap();
        assert_eq!(tab.jordan_types(), tba.jordan_types());
        assert_eq!(tab.orbit_dims(), tba.orbit_dims());
    }

    #[test]
    fn join_with_point_suspends_tensored_homology() {
        // H_{k+1}(join(c, Z/p)) = H_k(c) (x) tauR for k >= 1
        let field = f(3);
        for c in [complex_u(field), complex_v(field), lens(field, 3)] {
            let tc = HomologyTable::compute(&c).unwrap();
            let tj = HomologyTable::compute(&join_with_point(&c).unwrap()).unwrap();
            let taur = RModule::indecomposable(field, 1).unwrap();
            for k in 1..=c.dim() {
                let expect = tc.equivariant[k].module.tensor_diagonal(&taur).unwrap();
                assert_eq!(
                    tj.jordan_types()[k + 1],
                    expect.jordan_type(),
                    "degree {} of {:?}",
                    k,
                    c
                );
            }
        }
    }

    #[test]
    fn expanded_join_satisfies_all_invariants() {
        let field = f(3);
        let j = join(&complex_v(field), &lens(field, 1)).unwrap();
        j.expand().check_invariants().unwrap();
    }

    #[test]
    fn kunneth_dimensions_for_expanded_join() {
        // reduced homology of the total join is the convolution of the
        // factors' reduced homology, shifted by one
        let field = f(3);
        let pairs = [
            (complex_u(field), point_orbit(field)),
            (complex_v(field), lens(field, 1)),
            (lens(field, 2), lens(field, 1)),
        ];
        for (a, b) in pairs {
            let j = join(&a, &b).unwrap();
            let ha = reduced_expanded_dims(&a);
            let hb = reduced_expanded_dims(&b);
            let hj = reduced_expanded_dims(&j);
            for n in 0..hj.len() {
                let expect: usize = if n == 0 {
                    0
                } else {
                    (0..n).map(|i| ha.get(i).copied().unwrap_or(0) * hb.get(n - 1 - i).copied().unwrap_or(0)).sum()
                };
                assert_eq!(hj[n], expect, "degree {} of join({:?},{:?})", n, a, b);
            }
        }
    }

    fn reduced_expanded_dims(c: &EquivariantComplex) -> Vec<usize> {
        let sqs = crate::homology::fp_homology(c.expand().complex()).unwrap();
        let mut dims: Vec<usize> = sqs.iter().map(|s| s.dim()).collect();
        dims[0] -= 1;
        dims
    }
}

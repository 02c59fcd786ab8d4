//! Finitely generated modules over R = F_p[Z/p], presented by the action
//! of tau as a nilpotent operator.
//!
//! The indecomposables are tau^i R of dimension p - i; a module is
//! classified up to isomorphism by the Jordan type of its tau-operator.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use std::collections::BTreeMap;
use std::fmt;

/// An R-module: a finite-dimensional F_p space with a tau-operator
/// satisfying tau^p = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct RModule {
    field: PrimeField,
    dim: usize,
    tau_op: Matrix,
}

impl RModule {
    pub fn new(field: PrimeField, tau_op: Matrix) -> Result<Self> {
        if tau_op.rows() != tau_op.cols() {
            return Err(Error::DimensionMismatch(format!(
                "tau operator must be square, got {}x{}",
                tau_op.rows(),
                tau_op.cols()
            )));
        }
        if tau_op.field() != field {
            return Err(Error::FieldMismatch(field.p(), tau_op.field().p()));
        }
        let dim = tau_op.rows();
        if !tau_op.pow(field.p() as usize).is_zero() {
            return Err(Error::NotInvariant(format!(
                "operator is not nilpotent of order at most {}",
                field.p()
            )));
        }
        Ok(RModule { field, dim, tau_op })
    }

    pub fn zero(field: PrimeField) -> Self {
        RModule {
            field,
            dim: 0,
            tau_op: Matrix::zero(field, 0, 0),
        }
    }

    /// The indecomposable tau^i R, 0 <= i <= p-1: dimension p - i, with tau
    /// acting as a single nilpotent shift block.
    pub fn indecomposable(field: PrimeField, i: usize) -> Result<Self> {
        let p = field.p() as usize;
        if i >= p {
            return Err(Error::OutOfRange(format!(
                "tau power {} out of range 0..={}",
                i,
                p - 1
            )));
        }
        let dim = p - i;
        let mut tau_op = Matrix::zero(field, dim, dim);
        for j in 0..dim.saturating_sub(1) {
            tau_op.set(j + 1, j, 1);
        }
        Ok(RModule { field, dim, tau_op })
    }

    /// The free module R = tau^0 R.
    pub fn free(field: PrimeField) -> Self {
        Self::indecomposable(field, 0).expect("0 is always in range")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tau_op(&self) -> &Matrix {
        &self.tau_op
    }

    /// The generator action g = I - tau.
    pub fn g_op(&self) -> Matrix {
        Matrix::identity(self.field, self.dim).sub(&self.tau_op)
    }

    pub fn direct_sum(&self, other: &RModule) -> Result<RModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        let dim = self.dim + other.dim;
        let mut tau_op = Matrix::zero(self.field, dim, dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                tau_op.set(i, j, self.tau_op.get(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                tau_op.set(self.dim + i, self.dim + j, other.tau_op.get(i, j));
            }
        }
        Ok(RModule {
            field: self.field,
            dim,
            tau_op,
        })
    }

    /// Tensor product over F_p with the diagonal group action. On the
    /// Kronecker basis (left factor major) tau acts as
    /// T (x) I + I (x) T' - T (x) T'.
    pub fn tensor_diagonal(&self, other: &RModule) -> Result<RModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        let f = self.field;
        let (dm, dn) = (self.dim, other.dim);
        let dim = dm * dn;
        let idm = Matrix::identity(f, dm);
        let idn = Matrix::identity(f, dn);
        let t1 = kronecker(&self.tau_op, &idn);
        let t2 = kronecker(&idm, &other.tau_op);
        let t3 = kronecker(&self.tau_op, &other.tau_op);
        let tau_op = t1.add(&t2).sub(&t3);
        debug_assert!(tau_op.pow(f.p() as usize).is_zero());
        Ok(RModule {
            field: f,
            dim,
            tau_op,
        })
    }

    /// Jordan type of the tau-operator: the multiset of nilpotent block
    /// sizes, computed from the ranks of tau powers. A complete isomorphism
    /// invariant for R-modules.
    pub fn jordan_type(&self) -> JordanType {
        let p = self.field.p() as usize;
        // ranks[s] = rank(tau^s); tau^p = 0 so the list stops at p
        let mut ranks = Vec::with_capacity(p + 1);
        ranks.push(self.dim);
        let mut power = self.tau_op.clone();
        for _ in 1..=p {
            ranks.push(power.rank());
            if *ranks.last().unwrap() == 0 {
                break;
            }
            power = power.mul(&self.tau_op);
        }
        while ranks.len() < p + 2 {
            ranks.push(0);
        }
        let blocks_ge = |s: usize| ranks[s - 1].saturating_sub(ranks[s]);
        let mut counts = BTreeMap::new();
        for s in 1..=p {
            let c = blocks_ge(s).saturating_sub(blocks_ge(s + 1));
            if c > 0 {
                counts.insert(s, c);
            }
        }
        JordanType { counts }
    }

    /// Isomorphism test: equal Jordan types.
    pub fn is_isomorphic(&self, other: &RModule) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        Ok(self.jordan_type() == other.jordan_type())
    }
}

impl fmt::Debug for RModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RModule(dim={}, type={})",
            self.dim,
            self.jordan_type()
        )
    }
}

/// Kronecker product, row-major pairing: index (i, j) -> i * cols(b) + j.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let mut out = Matrix::zero(f, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let av = a.get(i, k);
            if av == 0 {
                continue;
            }
            for j in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(
                        i * b.rows() + j,
                        k * b.cols() + l,
                        f.mul(av, b.get(j, l)),
                    );
                }
            }
        }
    }
    out
}

/// Multiset of Jordan block sizes; block size s corresponds to the
/// indecomposable tau^{p-s} R.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JordanType {
    counts: BTreeMap<usize, usize>,
}

impl JordanType {
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Self {
        let mut counts = BTreeMap::new();
        for &(size, mult) in blocks {
            if mult > 0 {
                *counts.entry(size).or_insert(0) += mult;
            }
        }
        JordanType { counts }
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.counts.iter().map(|(&s, &c)| s * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Renders the module as a direct sum of indecomposables, e.g.
    /// "tau^2 R (+) R" for blocks {p-2: 1, p: 1}.
    pub fn module_notation(&self, field: PrimeField) -> String {
        if self.counts.is_empty() {
            return "0".to_string();
        }
        let p = field.p() as usize;
        let mut parts = Vec::new();
        for (&size, &mult) in &self.counts {
            let i = p - size;
            let term = match i {
                0 => "R".to_string(),
                1 => "tau R".to_string(),
                _ => format!("tau^{} R", i),
            };
            for _ in 0..mult {
                parts.push(term.clone());
            }
        }
        parts.join(" (+) ")
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (size, mult)) in self.counts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", size, mult)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn jt(blocks: &[(usize, usize)]) -> JordanType {
        JordanType::from_blocks(blocks)
    }

    #[test]
    fn indecomposables_have_expected_shape() {
        // free module: one block of size p
        let r = RModule::indecomposable(f(3), 0).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(r.jordan_type(), jt(&[(3, 1)]));
        // trivial module tau^{p-1} R
        let t = RModule::indecomposable(f(3), 2).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.tau_op().is_zero());
        // tau R at p = 5: dimension 4; oracle: rank of tau on R is p-1
        let m = RModule::indecomposable(f(5), 1).unwrap();
        assert_eq!(m.dim(), 4);
        let tau_on_r = crate::group_ring::GroupRingElem::tau(f(5)).left_mult_matrix();
        assert_eq!(m.dim(), tau_on_r.rank());
        assert_eq!(m.jordan_type(), jt(&[(4, 1)]));
        assert!(RModule::indecomposable(f(3), 3).is_err());
    }

    #[test]
    fn jordan_type_of_zero_module_is_empty() {
        assert!(RModule::zero(f(3)).jordan_type().is_zero());
    }

    #[test]
    fn jordan_type_rejects_non_nilpotent() {
        let id = Matrix::identity(f(3), 2);
        assert!(RModule::new(f(3), id).is_err());
    }

    /// Independent Jordan-type oracle via brute-force kernel dimension
    /// growth: dim ker(T^s) - dim ker(T^{s-1}) counts blocks of size >= s.
    fn oracle_jordan(m: &RModule) -> JordanType {
        let p = m.field().p() as usize;
        let mut kdims = vec![0usize];
        for s in 1..=p {
            kdims.push(m.tau_op().pow(s).kernel_basis().cols());
        }
        kdims.push(*kdims.last().unwrap());
        let ge = |s: usize| kdims[s] - kdims[s - 1];
        let mut blocks = vec![];
        for s in 1..=p {
            let c = ge(s).saturating_sub(if s == p { 0 } else { ge(s + 1) });
            blocks.push((s, c));
        }
        JordanType::from_blocks(&blocks)
    }

    #[test]
    fn tensor_with_trivial_module_preserves_type() {
        // tau^{p-1}R (x) tauR = tauR for p in {3, 5, 7}
        for p in [3u64, 5, 7] {
            let field = f(p);
            let triv = RModule::indecomposable(field, p as usize - 1).unwrap();
            let taur = RModule::indecomposable(field, 1).unwrap();
            let t = triv.tensor_diagonal(&taur).unwrap();
            assert_eq!(t.jordan_type(), jt(&[(p as usize - 1, 1)]));
            assert_eq!(t.jordan_type(), oracle_jordan(&t));
        }
    }

    #[test]
    fn tensor_of_two_trivial_modules_is_trivial() {
        let field = f(5);
        let triv = RModule::indecomposable(field, 4).unwrap();
        let t = triv.tensor_diagonal(&triv).unwrap();
        assert_eq!(t.jordan_type(), jt(&[(1, 1)]));
    }

    #[test]
    fn tensor_splitting_of_codimension_two_block() {
        // tau^{p-2}R (x) tauR = tau^2 R (+) R
        for p in [3u64, 5, 7] {
            let field = f(p);
            let ps = p as usize;
            let a = RModule::indecomposable(field, ps - 2).unwrap();
            let taur = RModule::indecomposable(field, 1).unwrap();
            let t = a.tensor_diagonal(&taur).unwrap();
            assert_eq!(t.jordan_type(), jt(&[(ps - 2, 1), (ps, 1)]));
            // direct-sum comparison via iso_test
            let expect = RModule::indecomposable(field, 2)
                .unwrap()
                .direct_sum(&RModule::free(field))
                .unwrap();
            assert!(t.is_isomorphic(&expect).unwrap());
        }
    }

    #[test]
    fn free_tensor_is_free_of_full_rank() {
        // R (x) tauR at p = 3: 6-dimensional free module; oracle confirms
        let field = f(3);
        let t = RModule::free(field)
            .tensor_diagonal(&RModule::indecomposable(field, 1).unwrap())
            .unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.jordan_type(), jt(&[(3, 2)]));
        assert_eq!(t.jordan_type(), oracle_jordan(&t));
    }

    #[test]
    fn tensor_tau_operator_matches_group_action() {
        // the diagonal tau-action equals I - g (x) g
        let field = f(5);
        let m = RModule::indecomposable(field, 2).unwrap();
        let n = RModule::indecomposable(field, 1).unwrap();
        let t = m.tensor_diagonal(&n).unwrap();
        let gg = kronecker(&m.g_op(), &n.g_op());
        let expect = Matrix::identity(field, t.dim()).sub(&gg);
        assert_eq!(t.tau_op(), &expect);
    }

    #[test]
    fn iso_test_basics() {
        let field = f(5);
        let r = RModule::free(field);
        assert!(r.is_isomorphic(&r).unwrap());
        let a = RModule::indecomposable(field, 1).unwrap();
        let b = RModule::indecomposable(field, 2).unwrap();
        assert!(!a.is_isomorphic(&b).unwrap());
        let other = RModule::free(f(7));
        assert!(r.is_isomorphic(&other).is_err());
    }

    #[test]
    fn display_notation() {
        let field = f(5);
        assert_eq!(jt(&[(3, 1), (5, 1)]).module_notation(field), "tau^2 R (+) R");
        assert_eq!(jt(&[]).module_notation(field), "0");
        assert_eq!(jt(&[(4, 2)]).module_notation(field), "tau R (+) tau R");
        assert_eq!(jt(&[(1, 1), (3, 1)]).to_string(), "{1:1, 3:1}");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random R-module: a block-diagonal sum of indecomposables
        /// conjugated by a random invertible matrix.
        fn arb_module(p: u64, max_blocks: usize) -> impl Strategy<Value = RModule> {
            let field = f(p);
            proptest::collection::vec(0..p as usize, 1..=max_blocks).prop_map(move |is| {
                let mut m = RModule::zero(field);
                for i in is {
                    m = m
                        .direct_sum(&RModule::indecomposable(field, i).unwrap())
                        .unwrap();
                }
                m
            })
        }

        fn arb_invertible(p: u64, dim: usize, seed: u64) -> Matrix {
            use rand::{Rng, SeedableRng};
            let field = f(p);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            loop {
                let mut m = Matrix::zero(field, dim, dim);
                for i in 0..dim {
                    for j in 0..dim {
                        m.set(i, j, rng.gen_range(0..p));
                    }
                }
                if m.rank() == dim {
                    return m;
                }
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn tensor_dim_and_nilpotency(m in arb_module(3, 2), n in arb_module(3, 2)) {
                let t = m.tensor_diagonal(&n).unwrap();
                prop_assert_eq!(t.dim(), m.dim() * n.dim());
                prop_assert!(t.tau_op().pow(3).is_zero());
            }

            #[test]
            fn tensor_symmetric_up_to_iso(m in arb_module(3, 2), n in arb_module(3, 2)) {
                let a = m.tensor_diagonal(&n).unwrap();
                let b = n.tensor_diagonal(&m).unwrap();
                prop_assert_eq!(a.jordan_type(), b.jordan_type());
            }

            #[test]
            fn free_absorbs(m in arb_module(5, 2)) {
                let field = f(5);
                let t = RModule::free(field).tensor_diagonal(&m).unwrap();
                prop_assert_eq!(t.jordan_type(), JordanType::from_blocks(&[(5, m.dim())]));
            }

            #[test]
            fn jordan_type_conjugation_invariant(m in arb_module(3, 3), seed in 0u64..1000) {
                let dim = m.dim();
                let c = arb_invertible(3, dim, seed);
                let cinv = c.inverse().unwrap();
                let conj = c.mul(m.tau_op()).mul(&cinv);
                let m2 = RModule::new(f(3), conj).unwrap();
                prop_assert_eq!(m.jordan_type(), m2.jordan_type());
            }
        }
    }
}

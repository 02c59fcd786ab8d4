//! Randomized generation of valid free equivariant complexes and batch
//! verification of index and homology identities over the samples.
//!
//! Generation is a pure function of (seed, trial): every boundary column
//! is drawn from the cycle subspace of the previous expanded degree (and,
//! in degree 1, from the augmentation-free part), which guarantees a valid
//! complex without rejection sampling while keeping every valid complex
//! reachable.

use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElem, RMatrix};
use crate::homology::{projection_chain_matrix, HomologyTable};
use crate::index::index_of;
use crate::join::{join, join_with_point};
use crate::linalg::{Matrix, PrimeField};
use crate::rmodule::RModule;
use crate::rng::subrng;
use rand::Rng;
use serde::Serialize;

const SHAPE_TAG: u64 = u64::MAX;

/// Configuration for a batch of randomized trials.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub field: PrimeField,
    pub max_dim: usize,
    pub max_rank: usize,
    pub seed: u64,
    pub trials: usize,
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_rank < 1 {
            return Err(Error::OutOfRange("max_rank must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::OutOfRange("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Generates a validating complex, deterministically from (seed, trial).
pub fn random_free_complex(cfg: &GenConfig, trial: u64) -> EquivariantComplex {
    let field = cfg.field;
    let p = field.p() as usize;
    let mut shape_rng = subrng(cfg.seed, &[trial, SHAPE_TAG, 0]);
    let dim = shape_rng.gen_range(0..=cfg.max_dim as u64) as usize;
    let ranks: Vec<usize> = (0..=dim)
        .map(|_| shape_rng.gen_range(1..=cfg.max_rank as u64) as usize)
        .collect();

    let mut boundaries: Vec<RMatrix> = Vec::with_capacity(dim);
    // cycle space of the previous expanded degree; in degree 1 the
    // admissible boundaries are the augmentation-free 0-chains
    let mut cycle_basis: Matrix = {
        let head = EquivariantComplex::new(field, "head", vec![ranks[0]], vec![])
            .expect("static shape");
        projection_chain_matrix(&head, 0).kernel_basis()
    };
    for n in 1..=dim {
        let mut rmat = RMatrix::zero(field, ranks[n - 1], ranks[n]);
        for a in 0..ranks[n] {
            let mut rng = subrng(cfg.seed, &[trial, n as u64, a as u64]);
            let coeffs: Vec<u64> = (0..cycle_basis.cols())
                .map(|_| rng.gen_range(0..field.p()))
                .collect();
            let chain = cycle_basis.mul(&Matrix::column(field, &coeffs));
            for i in 0..ranks[n - 1] {
                let mut elem = vec![0u64; p];
                for (e, coeff) in elem.iter_mut().enumerate() {
                    *coeff = chain.get(i * p + e, 0);
                }
                rmat.set(i, a, GroupRingElem::from_coeffs(field, elem).expect("reduced"));
            }
        }
        cycle_basis = rmat.expand().kernel_basis();
        boundaries.push(rmat);
    }
    let c = EquivariantComplex::new(
        field,
        format!("random(seed={},trial={})", cfg.seed, trial),
        ranks,
        boundaries,
    )
    .expect("shapes are consistent by construction");
    debug_assert!(c.validate().is_empty());
    c
}

/// How the index of a join compares with the sum of the factor indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdditivityOutcome {
    Exact,
    PlusOne,
    MinusOne,
    Violation,
}

/// Indices of two factors and their join, with the classification of the
/// outcome: exact additivity always holds when either index is even;
/// when both are odd the join index may deviate by one in either
/// direction, and anything else is a violation.
#[derive(Clone, Debug, Serialize)]
pub struct AdditivityCheck {
    pub index_a: usize,
    pub index_b: usize,
    pub index_join: usize,
    pub outcome: AdditivityOutcome,
}

pub fn check_additivity(a: &EquivariantComplex, b: &EquivariantComplex) -> Result<AdditivityCheck> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    let index_a = index_of(a)?;
    let index_b = index_of(b)?;
    let index_join = index_of(&join(a, b)?)?;
    let sum = index_a + index_b;
    let both_odd = index_a % 2 == 1 && index_b % 2 == 1;
    let outcome = if index_join == sum {
        AdditivityOutcome::Exact
    } else if both_odd && index_join == sum + 1 {
        AdditivityOutcome::PlusOne
    } else if both_odd && index_join + 1 == sum {
        AdditivityOutcome::MinusOne
    } else {
        AdditivityOutcome::Violation
    };
    Ok(AdditivityCheck {
        index_a,
        index_b,
        index_join,
        outcome,
    })
}

/// Per-degree outcome of one identity check.
#[derive(Clone, Debug)]
pub struct DegreeCheck {
    pub degree: usize,
    pub passed: bool,
    pub detail: String,
}

/// Results of the three homology identities a complex must satisfy when
/// joined with the point orbit.
#[derive(Clone, Debug)]
pub struct LemmaChecks {
    /// H_{k+1}(join(c, Z/p)) is H_k(c) tensored with tauR, k >= 1.
    pub suspension_tensor: Vec<DegreeCheck>,
    /// Reduced orbit homology of join(c, point) splits as the cokernel of
    /// q_* plus the shifted kernel of q_*.
    pub cofiber_dimensions: Vec<DegreeCheck>,
    /// The two closed-form tensor decompositions of indecomposables.
    pub tensor_table: bool,
}

impl LemmaChecks {
    pub fn passed(&self) -> bool {
        self.tensor_table
            && self.suspension_tensor.iter().all(|c| c.passed)
            && self.cofiber_dimensions.iter().all(|c| c.passed)
    }
}

pub fn check_lemmas(c: &EquivariantComplex) -> Result<LemmaChecks> {
    c.ensure_valid()?;
    let field = c.field();
    let p = field.p() as usize;
    let table = HomologyTable::compute(c)?;
    let joined = join_with_point(c)?;
    let joined_table = HomologyTable::compute(&joined)?;
    let taur = RModule::indecomposable(field, 1)?;

    let mut suspension_tensor = Vec::new();
    for k in 1..=c.dim() {
        let expect = table.equivariant[k].module.tensor_diagonal(&taur)?.jordan_type();
        let got = joined_table.jordan_types()[k + 1].clone();
        suspension_tensor.push(DegreeCheck {
            degree: k,
            passed: expect == got,
            detail: format!("H_{}: expected {}, got {}", k + 1, expect, got),
        });
    }

    // dimension identity from the cofiber sequence of the orbit projection
    let h_orbit = table.orbit_dims();
    let h_total: Vec<usize> = table.equivariant_dims();
    let q_rank: Vec<usize> = (0..=c.dim()).map(|n| table.projection(n).rank()).collect();
    let lhs = joined_table.orbit_reduced_dims();
    let mut cofiber_dimensions = Vec::new();
    for n in 0..=joined.dim() {
        let coker = if n <= c.dim() {
            h_orbit[n] - q_rank[n]
        } else {
            0
        };
        let ker_prev = if n >= 1 && n - 1 <= c.dim() {
            h_total[n - 1] - q_rank[n - 1]
        } else {
            0
        };
        let expect = coker + ker_prev;
        cofiber_dimensions.push(DegreeCheck {
            degree: n,
            passed: lhs[n] == expect,
            detail: format!(
                "reduced H_{}: expected {} (coker {} + ker {}), got {}",
                n, expect, coker, ker_prev, lhs[n]
            ),
        });
    }

    let trivial = RModule::indecomposable(field, p - 1)?;
    let next = RModule::indecomposable(field, p - 2)?;
    let tensor_table = trivial.tensor_diagonal(&taur)?.jordan_type()
        == RModule::indecomposable(field, 1)?.jordan_type()
        && next.tensor_diagonal(&taur)?.jordan_type()
            == RModule::indecomposable(field, 2)?
                .direct_sum(&RModule::free(field))?
                .jordan_type();

    Ok(LemmaChecks {
        suspension_tensor,
        cofiber_dimensions,
        tensor_table,
    })
}

/// Summary of one generated complex.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub orbit_homology: Vec<usize>,
    pub ranks: Vec<usize>,
}

fn summarize(c: &EquivariantComplex) -> Result<ComplexSummary> {
    let table = HomologyTable::compute(c)?;
    Ok(ComplexSummary {
        orbit_homology: table.orbit_dims(),
        ranks: c.ranks().to_vec(),
    })
}

/// One additivity trial over a generated pair.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub a: ComplexSummary,
    pub b: ComplexSummary,
    pub index_a: usize,
    pub index_b: usize,
    pub index_join: usize,
    pub outcome: AdditivityOutcome,
    pub trial: usize,
}

/// The full report of a batch run; serializes deterministically.
#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub max_dim: usize,
    pub max_rank: usize,
    pub p: u64,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub violations: usize,
}

/// Runs `cfg.trials` additivity trials; trial t draws its pair from the
/// sub-streams 2t and 2t + 1.
pub fn run_trials(cfg: &GenConfig) -> Result<TrialReport> {
    cfg.validate()?;
    let mut trials = Vec::with_capacity(cfg.trials);
    let mut violations = 0;
    for t in 0..cfg.trials {
        let a = random_free_complex(cfg, 2 * t as u64);
        let b = random_free_complex(cfg, 2 * t as u64 + 1);
        let check = check_additivity(&a, &b)?;
        if check.outcome == AdditivityOutcome::Violation {
            violations += 1;
        }
        trials.push(TrialRecord {
            a: summarize(&a)?,
            b: summarize(&b)?,
            index_a: check.index_a,
            index_b: check.index_b,
            index_join: check.index_join,
            outcome: check.outcome,
            trial: t,
        });
    }
    Ok(TrialReport {
        max_dim: cfg.max_dim,
        max_rank: cfg.max_rank,
        p: cfg.field.p(),
        seed: cfg.seed,
        trials,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builders::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn cfg(p: u64, seed: u64, trials: usize) -> GenConfig {
        GenConfig {
            field: f(p),
            max_dim: 3,
            max_rank: 2,
            seed,
            trials,
        }
    }

    #[test]
    fn generated_complexes_validate() {
        let cfg = cfg(3, 7, 1);
        for t in 0..200 {
            let c = random_free_complex(&cfg, t);
            assert!(c.validate().is_empty(), "trial {}", t);
        }
    }

    #[test]
    fn zero_dimensional_config_gives_index_one() {
        let cfg = GenConfig {
            field: f(3),
            max_dim: 0,
            max_rank: 2,
            seed: 5,
            trials: 1,
        };
        for t in 0..10 {
            let c = random_free_complex(&cfg, t);
            assert_eq!(c.dim(), 0);
            assert_eq!(index_of(&c).unwrap(), 1);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = cfg(3, 42, 1);
        let a = random_free_complex(&cfg, 7);
        let b = random_free_complex(&cfg, 7);
        assert_eq!(a, b);
        let other = random_free_complex(&cfg, 8);
        assert_ne!(a, other);
    }

    #[test]
    fn additivity_outcomes_on_the_counterexamples() {
        let field = f(3);
        let point = point_orbit(field);
        let u = check_additivity(&complex_u(field), &point).unwrap();
        assert_eq!(u.outcome, AdditivityOutcome::PlusOne);
        assert_eq!((u.index_a, u.index_b, u.index_join), (3, 1, 5));
        let v = check_additivity(&complex_v(field), &point).unwrap();
        assert_eq!(v.outcome, AdditivityOutcome::MinusOne);
        assert_eq!((v.index_a, v.index_b, v.index_join), (3, 1, 3));
        let lenses = check_additivity(&lens(field, 1), &lens(field, 2)).unwrap();
        assert_eq!(lenses.outcome, AdditivityOutcome::Exact);
        assert_eq!((lenses.index_a, lenses.index_b, lenses.index_join), (2, 3, 5));
    }

    #[test]
    fn lemma_checks_pass_on_builtins() {
        let field = f(3);
        for c in [complex_u(field), complex_v(field), lens(field, 2)] {
            let checks = check_lemmas(&c).unwrap();
            assert!(checks.passed(), "{:?}: {:?}", c, checks);
        }
    }

    #[test]
    fn small_batch_has_no_violations() {
        let report = run_trials(&cfg(3, 11, 10)).unwrap();
        assert_eq!(report.violations, 0);
        for r in &report.trials {
            assert_ne!(r.outcome, AdditivityOutcome::Violation);
            if r.index_a % 2 == 0 || r.index_b % 2 == 0 {
                assert_eq!(r.outcome, AdditivityOutcome::Exact, "trial {}", r.trial);
            }
        }
    }

    #[test]
    fn reports_serialize_identically_across_runs() {
        let a = serde_json::to_string(&run_trials(&cfg(3, 13, 5)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_trials(&cfg(3, 13, 5)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_config_is_rejected() {
        let mut c = cfg(3, 1, 1);
        c.max_rank = 0;
        assert!(run_trials(&c).is_err());
    }
}

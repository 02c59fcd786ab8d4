//! Exact homological algebra for finite free Z/p-CW complexes, p an odd
//! prime.
//!
//! The crate represents such a complex by its cellular chain complex of
//! free modules over R = F_p[Z/p] and computes, without any floating
//! point:
//!
//! - equivariant homology as R-modules classified by Jordan type,
//! - orbit homology with deterministic representative bases,
//! - the join of two complexes with the diagonal action,
//! - the cohomological index, via a chain-level lift into the standard
//!   periodic resolution of F_p over R,
//! - randomized searches over generated complexes checking how the index
//!   behaves under joins.

pub mod complex;
pub mod error;
pub mod explore;
pub mod group_ring;
pub mod homology;
pub mod index;
pub mod join;
pub mod linalg;
pub mod rmodule;
pub mod rng;

pub use complex::{builders, EquivariantComplex, ExpandedComplex, FpChainComplex};
pub use error::{Error, Result, Violation};
pub use group_ring::{GroupRingElem, RMatrix};
pub use homology::{orbit_projection_induced, HomologyTable};
pub use linalg::{Matrix, PrimeField, Subquotient};
pub use rmodule::{JordanType, RModule};

//! Combinatorial data of a normal-crossings special fibre.
//!
//! Components are indexed from 0; strata are keyed by strictly increasing
//! [`IndexSet`]s and carry graded rational cohomology with restriction,
//! Gysin and (optionally) cup-product matrices.

pub mod complex;
pub mod index;
pub mod validate;

use thiserror::Error;

pub use complex::{basis_vec, CupKey, GradedClass, GradedSpace, MapKey, StrataComplex};
pub use index::{a_sign, admissible, parity_sign, sigma, Admissible, IndexSet};
pub use validate::{
    principal_fibre_operator, validate, Finding, FindingKind, Severity, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("pair {0}, {1} is not admissible")]
    NotAdmissible(IndexSet, IndexSet),
    #[error("no cup tensor on {stratum} for degrees ({d1},{d2})")]
    MissingCup { stratum: IndexSet, d1: u32, d2: u32 },
    #[error("shape error: {0}")]
    Shape(String),
}

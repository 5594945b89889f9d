//! The weight spectral sequence of a normal-crossings degeneration.
//!
//! `E1(r, n)` collects `H^{n-r-2k}(Y^(2k+r+1))(-r-k)` over `k >= max(0, -r)` and
//! converges to `gr^W_{n+r} H^n` of the nearby fibre. The E1 page is assembled
//! from a [`strata::StrataComplex`]; E2 is computed as kernel modulo image.

pub mod curves;
pub mod e2;
pub mod nerve;
pub mod page;

use thiserror::Error;

pub use curves::{clemens_schmid_curve_check, ClemensSchmidReport};
pub use e2::{
    compute_e2, compute_e2_sequential, monodromy_weight_check, E2Block, E2Page, WeightCheckEntry,
};
pub use nerve::{cech_restriction, dual_complex_cohomology, monodromy_criteria, MonodromyCriteria};
pub use page::{
    assemble_e1, build_e1, build_slot, k_min, m_partial_inverse, nu_map, summand_shape, E1Page,
    E1Slot, SignProfile, SlotBlock,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenbrinkError {
    #[error("d1 squared is nonzero out of slot (r={r}, n={n}): {block}")]
    SignInconsistency { r: i32, n: i32, block: String },
    #[error("strata carry cohomology in degree {0} > 4; criteria are for surfaces")]
    DimensionError(u32),
}

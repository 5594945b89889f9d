//! The product on the cohomology of strata and its action on the E1 page.
//!
//! Signs follow the σ convention: `σ(I, k)` counts the elements of `I` below `k`,
//! `d' = Σ (-1)^σ rest_k` and `d'' = Σ (-1)^σ g_k`. Only the action of the left
//! column on the whole page is implemented; a product of two arbitrary page
//! elements is not.

pub mod cap;
pub mod chain;
pub mod star;
pub mod theta;

use strata::{IndexSet, StrataError};
use thiserror::Error;

pub use cap::{cap_product_oracle_check, unit_chain, CapReport};
pub use chain::{d_double_prime, d_prime, d_total, LabeledChain, TermKey};
pub use star::{
    project_to_left_column, same_class, slot_of, star, star_commutes_with_nu, E1Element, EntryKey,
};
pub use theta::{
    check_leibniz, check_leibniz_exhaustive, check_leibniz_sequential, leibniz_sides, on_page,
    theta, theta_chain, truncate_to_page, LeibnizReport, LeibnizWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlochError {
    #[error("stratum mismatch: {0}")]
    StratumMismatch(#[from] StrataError),
    #[error("left factor has a term on {stratum} degree {degree} with twist {twist}, outside the left column")]
    NotLeftColumn {
        stratum: IndexSet,
        degree: u32,
        twist: i64,
    },
    #[error("N x is not a d1-boundary at (r={r}, n={n})")]
    NotCocycle { r: i32, n: i32 },
}

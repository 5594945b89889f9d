//! Built-in strata complexes.

pub mod curves;
pub mod double_point;
pub mod product;
pub mod random;
pub mod ring;
pub mod triple_point;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model construction failed: {0}")]
    Construction(String),
}

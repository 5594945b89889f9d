//! Linear constraint systems whose solutions represent `N^i` as a class on the strata of a
//! resolved fibre product.
//!
//! For a candidate `c` in the left column of the total page, two groups of conditions are
//! imposed: `c` restricts to zero on the next stratum level (kernel rows), and
//! `(p_2)_*(c ∗ p_1^* v) = N^i v` for every basis class `v` of the source slot
//! (commutativity rows).

pub mod problem;
pub mod report;

use thiserror::Error;

pub use problem::{build_problem, solve, ConstraintGroup, ConstraintRow, CorrespondenceProblem};
pub use report::{
    correspondence_action, e2_class, nu_power_matrix, reduced_relations, symbolic_pushforward,
    verify_diagram, DiagramReport, E2ClassReport, Relation, SquareCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("model {model} has no candidate space for power {power}")]
    MissingStrata { model: String, power: usize },
    #[error("the constraint system is infeasible")]
    Infeasible,
    #[error(transparent)]
    Product(#[from] blochprod::BlochError),
}

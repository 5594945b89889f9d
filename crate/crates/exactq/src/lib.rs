//! Exact rational linear algebra.
//!
//! Everything is dense and deterministic: the same input always produces the
//! same echelon forms, bases and particular solutions.

pub mod linalg;
pub mod mat;
pub mod rat;
pub mod sparse;

pub use linalg::{
    echelonize, image_basis, inverse, kernel_basis, quotient_dim, rank, rank_of, rref,
    solve_affine, AffineSolutionSet, Echelon, Quotient,
};
pub use mat::{fmt_vec, vec_add, vec_is_zero, vec_scale, vec_sub, Mat, ShapeError};
pub use rat::{fmt_rat, frac, one, parse_rat, rat, zero, Rat, RatParseError};
pub use sparse::{solve_sparse, SparseRow, SparseSolution};

//! Documents, commands and reports.

pub mod commands;
pub mod document;
pub mod render;

pub use commands::{
    builtin_complex, run, solve_report, Outcome, EXIT_CHECK, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE,
};
pub use document::{parse, to_document, DocumentError, SCHEMA_VERSION};

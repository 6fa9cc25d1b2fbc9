//! Batch verification of monotone bifunction problems.
//!
//! A problem document names grids, bifunctions and suites; [`run::run_suite`]
//! samples the bifunctions and runs the suites, and [`report`] renders the
//! resulting bundle as text, JSON or CSV.

pub mod expr;
pub mod problem;
pub mod report;
pub mod run;

pub use expr::{parse_expression, EvalError, Expr, ParseError};
pub use problem::{parse_problem, Format, InputError, Problem, ProblemSpec, Suite};
pub use report::{emit_report, render, EXIT_INPUT_ERROR, EXIT_PASS, EXIT_VERIFICATION_FAILURE};
pub use run::{run_suite, ReportBundle};

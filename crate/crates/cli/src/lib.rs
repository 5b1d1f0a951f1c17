//! Command implementations behind the `hh1` binary. Each command loads its
//! inputs, runs the computation, and returns a [`Report`] whose JSON form is
//! byte-for-byte reproducible.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{
    cmd_bracket, cmd_center, cmd_counterexample, cmd_hh1, cmd_hh1r, cmd_integrate,
    cmd_morita_check, cmd_ppower, cmd_validate, AlgebraArgs, SearchArgs,
};
pub use error::{CliError, EXIT_INPUT, EXIT_MATH};
pub use report::Report;

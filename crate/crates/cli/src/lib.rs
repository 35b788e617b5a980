//! JSON front end for the `onemotive` library.

pub mod commands;
pub mod convert;
pub mod schema;

pub use commands::{run, run_text, CliError, Options, Outcome, Verb};
pub use schema::{schema_validate, DocKind};

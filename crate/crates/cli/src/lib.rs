//! Command-line front end for the `rsp-core` solvers.
//!
//! Exit codes: 0 ok, 1 unreadable or malformed input, 2 invalid graph or
//! arguments, 3 no proper policy, 4 assumption violated during a solve,
//! 5 policy cap exceeded, 6 algorithms disagree.

pub mod bench;
pub mod commands;
pub mod error;
pub mod format;
pub mod oracle;
pub mod solve;

pub use commands::{run, Cli};
pub use error::CliError;

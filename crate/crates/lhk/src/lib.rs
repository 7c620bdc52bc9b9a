//! File formats, verification reports, the bundled corpus and the `lhk` command line
//! for [`lhk_core`].
//!
//! Every command reads JSON complex files, runs checks from `lhk_core` and returns a
//! [`report::Report`]. Exit codes: 0 pass, 1 invalid input, 2 failed check or unknown
//! cell id, 3 I/O or parse error.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use cli::{run, Cli, Command};
pub use commands::Outcome;
pub use error::{CliError, CliResult};
pub use report::{Record, Report, Verdict};

//! Command-line front end and file formats for `fracpart-core`.
//!
//! Every subcommand renders a table as csv (default), json, or an OEIS-style
//! b-file. Verification subcommands exit 1 when a check fails; flag and
//! precondition errors exit 2.

pub mod cli;
pub mod commands;
pub mod output;

pub use cli::run;

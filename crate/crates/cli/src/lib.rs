//! Library side of the `koszulcone` binary: input parsing, command execution
//! and the self-test.

pub mod commands;
pub mod input;
pub mod selftest;

pub use commands::{run, CheckKind, CliError, Command, Format, JobSpec, Method, Report};

//! IO, file formats, certificate envelopes, the experiment harness and
//! the `decyc` command-line interface over [`decyc_core`].

pub mod commands;
pub mod dot;
pub mod envelope;
pub mod experiment;
pub mod formats;

/// Exit codes of the CLI: usage errors are 2 (clap's default), violated
/// mathematical preconditions are 3, exhausted budgets (honest Unknown
/// verdicts) are 4.
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

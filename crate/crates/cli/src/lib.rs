//! Output formats and record builders behind the `qdot` command.

pub mod output;
pub mod records;

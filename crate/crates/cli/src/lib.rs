//! File formats, DOT export and subcommands behind the `pctree` binary.

pub mod commands;
pub mod dot;
pub mod format;

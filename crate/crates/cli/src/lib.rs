//! The `motzkin` command-line tool: problem files, reports and the result
//! cache. The binary is a thin clap layer over [`commands::Session`].

pub mod cache;
pub mod commands;
pub mod parse;
pub mod render;

pub use commands::{CliError, Format, Output, Session};

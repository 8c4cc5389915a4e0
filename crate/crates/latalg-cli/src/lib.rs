//! Library side of the `latalg` command-line tool: expression parsing,
//! evaluation, rendering, basis listings and basis caches. The binary in
//! `main.rs` only maps flags onto [`commands`].

pub mod cache;
pub mod commands;
pub mod error;
pub mod eval;
pub mod listing;
pub mod parse;
pub mod render;

pub use error::CliError;

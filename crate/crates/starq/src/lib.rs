//! Command-line companion to [`starq_core`]: input-file formats, built-in
//! demos, JSON reports, and the `starq` binary's dispatch logic.
//!
//! The library side exists so integration tests can exercise parsing and the
//! demos directly; everything user-facing goes through [`cli::run`].

#![deny(missing_docs)]

pub mod cli;
pub mod demos;
pub mod formats;
pub mod report;

pub use cli::run;

//! File formats, exporters and the command-line front end for the
//! [`sgraphs`] crate.
//!
//! * [`format`] — the versioned JSON S-graph schema and its codec.
//! * [`dot`] — stable-ordered DOT renderers for quivers and exchange graphs.
//! * [`app`] — argument parsing and subcommand dispatch (the `sgraphs`
//!   binary is a thin wrapper around [`app::run`]).

#![deny(missing_docs)]

pub mod app;
pub mod dot;
pub mod format;

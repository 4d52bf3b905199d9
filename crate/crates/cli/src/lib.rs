//! IO, file formats, experiment harness, and verification suite for the
//! online-coloring workspace. The `ocol` binary in this crate is the
//! command-line front end; see the repository README for usage.

pub mod claims;
pub mod config;
pub mod harness;
pub mod io;
pub mod records;

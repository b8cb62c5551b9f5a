//! Catalog driver for groups with action and their crossed modules.
//!
//! The binary is a thin clap front end over [`commands`]; everything it
//! writes is a [`catalog_file::CatalogFile`] (or CSV for classification
//! tables), and identical invocations produce identical bytes.

pub mod catalog_file;
pub mod commands;
pub mod error;
pub mod model;

pub use catalog_file::{CatalogFile, CatalogKind, Provenance};
pub use error::{CliError, CliResult};

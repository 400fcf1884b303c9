//! Command-line driver, example catalog and report emission for `mps-core`.

pub mod catalog;
pub mod input;
pub mod report;

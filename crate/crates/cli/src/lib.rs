//! Batch front end for `carnot-core`: group and scenario files in, reports out.

pub mod commands;
pub mod files;
pub mod report;

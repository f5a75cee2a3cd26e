//! Benchmark harness for HKA and HKA-K clustering: bundled datasets, CSV
//! ingestion, replicated runs with per-replicate seeds, summaries, rank-sum
//! comparisons and the `hka` command line.

pub mod cli;
pub mod config;
pub mod datasets;
pub mod error;
pub mod experiment;
pub mod report;

pub use error::{HarnessError, Result};

//! Heuristic Kalman Algorithm (HKA) and its partitional-clustering variants.
//!
//! The crate is `no_std` and needs only `alloc`. Every routine that draws
//! random numbers takes the caller's RNG, so a run is fully determined by
//! its seed.
//!
//! - [`optimizer`]: the generic bounded HKA minimizer over a diagonal
//!   Gaussian search distribution.
//! - [`kmeans`]: nearest-centroid assignment, centroid update and Lloyd
//!   iterations.
//! - [`clustering`]: pure HKA clustering and the HKA-K hybrid (weighted
//!   single-step K-Means time update plus conditional restart).
//! - [`metrics`]: ARI, Intra, Davies-Bouldin and the Wilcoxon rank-sum test.
//! - [`data`]: the in-memory dataset, bounding hyperbox and the two
//!   synthetic benchmark generators.
#![no_std]

extern crate alloc;

pub mod clustering;
pub mod data;
mod error;
pub mod kmeans;
pub mod metrics;
pub mod optimizer;

pub use error::{Error, Result};

//! Replicate runs and per-run measurements.

use std::time::Instant;

use hka_core::clustering::{hka_cluster, hkak_cluster, ClusteringResult};
use hka_core::data::Dataset;
use hka_core::kmeans::{kmeans_full, sample_datapoints};
use hka_core::metrics::{adjusted_rand_index, davies_bouldin, intra_distance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{HarnessError, Result};

/// Outcome of one replicate. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub intra: f64,
    /// Sum of squared distances, the minimized objective.
    pub j: f64,
    /// Absent when the dataset carries no labels.
    pub ari: Option<f64>,
    /// Absent when the index is undefined for the solution.
    pub db: Option<f64>,
    pub time_s: f64,
    pub evals: usize,
    pub iterations: usize,
    pub restarts: usize,
}

/// Runs one algorithm on `data` with a fresh generator seeded by `seed`.
pub fn cluster(data: &Dataset, k: usize, algorithm: &Algorithm, seed: u64) -> Result<ClusteringResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = match algorithm {
        Algorithm::Hka(p) => hka_cluster(data, k, p, &mut rng)?,
        Algorithm::Hkak(p) => hkak_cluster(data, k, p, &mut rng)?,
        Algorithm::KMeans(p) => {
            let init = sample_datapoints(data, k, &mut rng)?;
            let out = kmeans_full(data, init, p, &mut rng)?;
            ClusteringResult {
                centroids: out.centroids,
                assignment: out.assignment,
                objective: out.objective,
                evaluations: out.iterations,
                iterations: out.iterations,
                restarts: 0,
                best_trace: Vec::new(),
            }
        }
    };
    Ok(result)
}

/// Runs and measures a single replicate.
pub fn run_replicate(data: &Dataset, k: usize, algorithm: &Algorithm, seed: u64) -> Result<RunRecord> {
    let start = Instant::now();
    let r = cluster(data, k, algorithm, seed)?;
    let time_s = start.elapsed().as_secs_f64();
    let ari = data
        .labels()
        .map(|truth| adjusted_rand_index(truth, &r.assignment.labels))
        .transpose()?;
    Ok(RunRecord {
        seed,
        intra: intra_distance(data, &r.assignment, &r.centroids)?,
        j: r.objective,
        ari,
        db: davies_bouldin(data, &r.assignment, &r.centroids).ok(),
        time_s,
        evals: r.evaluations,
        iterations: r.iterations,
        restarts: r.restarts,
    })
}

/// Replicate `i` uses seed `base_seed + i`; the result order follows `i`
/// whether or not the runs execute in parallel.
pub fn run_replicates(
    data: &Dataset,
    k: usize,
    algorithm: &Algorithm,
    replicates: usize,
    base_seed: u64,
    parallel: bool,
) -> Result<Vec<RunRecord>> {
    if k == 0 || k > data.len() {
        return Err(HarnessError::usage(format!(
            "k = {k} is out of range for {} points",
            data.len()
        )));
    }
    algorithm.validate()?;
    let seeds: Vec<u64> = (0..replicates as u64).map(|i| base_seed.wrapping_add(i)).collect();
    let run = |&seed: &u64| run_replicate(data, k, algorithm, seed);
    if parallel {
        seeds.par_iter().map(run).collect()
    } else {
        seeds.iter().map(run).collect()
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let data = config.dataset.load()?;
    let k = config
        .k
        .or_else(|| config.dataset.default_k(&data))
        .ok_or_else(|| HarnessError::usage("k is required for unlabelled data"))?;
    run_replicates(
        &data,
        k,
        &config.algorithm,
        config.replicates,
        config.base_seed,
        config.parallel,
    )
}

//! HKA-based partitional clustering.
//!
//! A candidate solution is the concatenation `q = [z_1, ..., z_K]` of the
//! `K` centroids, so the search runs in `K * d` dimensions inside the
//! dataset's bounding hyperbox tiled `K` times. The objective is the sum of
//! squared distances of every point to its nearest centroid.
//!
//! [`hka_cluster`] drives the plain HKA loop over that objective.
//! [`hkak_cluster`] is the hybrid: after each Kalman estimate it takes one
//! K-Means step from `m_hat`, moves the mean a fraction `w` of the way
//! towards the step's result, propagates the variance through the implied
//! diagonal transition, and restarts from random datapoints once the best
//! samples have collapsed.

use alloc::vec::Vec;

use rand::Rng;

use crate::data::{bounding_hyperbox, Dataset};
use crate::kmeans::{self, Assignment, CentroidSet};
use crate::optimizer::{
    blend_variance, evaluate, hka_minimize_from, init_search_state, kalman_estimate, measure,
    sample_candidates, slowdown_factor, Bounds, GaussianSearchState, HkaParams,
};
use crate::{Error, Result};

/// Below this magnitude an `m_hat` coordinate gets an identity transition.
const TRANSITION_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct HkakParams {
    /// Candidates drawn per iteration (`N`).
    pub population: usize,
    /// Best candidates forming the measurement (`N_xi`).
    pub measurements: usize,
    /// Slowdown coefficient in `(0, 1]`.
    pub alpha: f64,
    /// Weight of the K-Means step in the mean update, in `[0, 1]`.
    pub weight: f64,
    /// Restart threshold on the scaled spread of the best samples.
    pub epsilon: f64,
    /// Iterations per search epoch; a restart begins a new epoch.
    pub max_iter: usize,
    /// Global ceiling on objective evaluations across restarts. Defaults to
    /// `10 * max_iter * (population + 1)`.
    pub eval_budget_cap: Option<usize>,
}

impl Default for HkakParams {
    fn default() -> Self {
        Self {
            population: 20,
            measurements: 10,
            alpha: 0.7,
            weight: 0.4,
            epsilon: 0.005,
            max_iter: 250,
            eval_budget_cap: None,
        }
    }
}

impl HkakParams {
    pub fn budget_cap(&self) -> usize {
        self.eval_budget_cap
            .unwrap_or(10 * self.max_iter * (self.population + 1))
    }

    fn as_hka(&self) -> HkaParams {
        HkaParams {
            population: self.population,
            measurements: self.measurements,
            alpha: self.alpha,
            max_iter: self.max_iter,
            stop_radius: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.as_hka().validate()?;
        if !(0.0..=1.0).contains(&self.weight) {
            return Err(Error::InvalidArgument("weight must lie in [0, 1]"));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidArgument("epsilon must be positive"));
        }
        if self.budget_cap() < self.max_iter * (self.population + 1) {
            return Err(Error::InvalidArgument(
                "evaluation cap is below max_iter * (population + 1)",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub centroids: CentroidSet,
    pub assignment: Assignment,
    /// Sum of squared point-to-centroid distances of the returned solution.
    pub objective: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub restarts: usize,
    /// Best objective value after each iteration.
    pub best_trace: Vec<f64>,
}

/// Result of the weighted K-Means time update.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeUpdate {
    /// Un-weighted single K-Means step from `m_hat`.
    pub step: Vec<f64>,
    /// `m_hat + w (step - m_hat)`.
    pub mean: Vec<f64>,
    /// `a_ii^2 * p_hat_ii` with `a_ii = mean_i / m_hat_i`.
    pub var: Vec<f64>,
}

pub fn encode(centroids: &CentroidSet) -> Vec<f64> {
    centroids.as_flat().to_vec()
}

pub fn decode(q: &[f64], k: usize, dim: usize) -> Result<CentroidSet> {
    if k == 0 || dim == 0 {
        return Err(Error::InvalidArgument("k and dim must be at least 1"));
    }
    if q.len() != k * dim {
        return Err(Error::InvalidArgument(
            "flat centroid vector length is not k * dim",
        ));
    }
    CentroidSet::new(k, dim, q.to_vec())
}

/// Sum of squared distances of each point to its nearest centroid in `q`.
pub fn clustering_objective(q: &[f64], data: &Dataset) -> Result<f64> {
    let dim = data.dim();
    if q.is_empty() || !q.len().is_multiple_of(dim) {
        return Err(Error::InvalidArgument(
            "flat centroid vector length is not a multiple of the data dimension",
        ));
    }
    if let Some(bad) = q.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFiniteObjective(*bad));
    }
    Ok(data
        .points()
        .map(|p| kmeans::nearest(p, q, dim).1)
        .sum())
}

/// The dataset's bounding hyperbox repeated `k` times.
pub fn search_bounds(data: &Dataset, k: usize) -> Result<Bounds> {
    Ok(bounding_hyperbox(data)?.tile(k))
}

/// Box-centred mean and `((max - min) / 6)^2` variance, tiled `k` times.
pub fn init_from_data(data: &Dataset, k: usize) -> Result<GaussianSearchState> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    Ok(init_search_state(&search_bounds(data, k)?))
}

fn check_k(data: &Dataset, k: usize) -> Result<()> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("dataset is empty"));
    }
    if k == 0 || k > data.len() {
        return Err(Error::InvalidArgument("k must lie in 1..=n"));
    }
    Ok(())
}

fn finish(
    data: &Dataset,
    k: usize,
    best: &[f64],
    evaluations: usize,
    restarts: usize,
    best_trace: Vec<f64>,
) -> Result<ClusteringResult> {
    let centroids = decode(best, k, data.dim())?;
    let assignment = kmeans::assign_points(data, &centroids)?;
    let objective = kmeans::sum_of_squares(data, &centroids, &assignment);
    Ok(ClusteringResult {
        centroids,
        assignment,
        objective,
        evaluations,
        iterations: best_trace.len(),
        restarts,
        best_trace,
    })
}

/// Plain HKA clustering.
pub fn hka_cluster<R: Rng + ?Sized>(
    data: &Dataset,
    k: usize,
    params: &HkaParams,
    rng: &mut R,
) -> Result<ClusteringResult> {
    check_k(data, k)?;
    let bounds = search_bounds(data, k)?;
    let state = init_from_data(data, k)?;
    let objective = |q: &[f64]| clustering_objective(q, data).unwrap_or(f64::NAN);
    let out = hka_minimize_from(state, objective, &bounds, params, rng)?;
    finish(data, k, &out.best, out.evaluations, 0, out.best_trace)
}

/// Weighted single-step K-Means time update.
pub fn hkak_time_update<R: Rng + ?Sized>(
    m_hat: &[f64],
    p_hat: &[f64],
    data: &Dataset,
    k: usize,
    weight: f64,
    rng: &mut R,
) -> Result<TimeUpdate> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::InvalidArgument("weight must lie in [0, 1]"));
    }
    if p_hat.len() != m_hat.len() {
        return Err(Error::DimensionMismatch {
            expected: m_hat.len(),
            found: p_hat.len(),
        });
    }
    let centroids = decode(m_hat, k, data.dim())?;
    let step = kmeans::kmeans_step(data, &centroids, rng)?.into_flat();
    let mean: Vec<f64> = m_hat
        .iter()
        .zip(&step)
        .map(|(m, s)| m + weight * (s - m))
        .collect();
    let var = m_hat
        .iter()
        .zip(&mean)
        .zip(p_hat)
        .map(|((m, next), p)| {
            let a = if m.abs() < TRANSITION_GUARD { 1.0 } else { next / m };
            a * a * p
        })
        .collect();
    Ok(TimeUpdate { step, mean, var })
}

/// Largest distance from the best candidate to the others after min-max
/// scaling every coordinate against `bounds`, divided by `k * dim`.
/// Zero-width coordinates scale to 0.
pub fn restart_radius<P: AsRef<[f64]>>(top: &[P], bounds: &Bounds, k: usize, dim: usize) -> Result<f64> {
    let len = k * dim;
    if bounds.dim() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bounds.dim(),
        });
    }
    let Some((best, rest)) = top.split_first() else {
        return Err(Error::InvalidArgument("no candidates given"));
    };
    let scale = |i: usize, v: f64| {
        let width = bounds.upper()[i] - bounds.lower()[i];
        if width > 0.0 {
            (v - bounds.lower()[i]) / width
        } else {
            0.0
        }
    };
    let best = best.as_ref();
    if best.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: best.len(),
        });
    }
    let mut max_dist: f64 = 0.0;
    for other in rest {
        let other = other.as_ref();
        if other.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: other.len(),
            });
        }
        let sq: f64 = (0..len)
            .map(|i| {
                let d = scale(i, best[i]) - scale(i, other[i]);
                d * d
            })
            .sum();
        max_dist = max_dist.max(libm::sqrt(sq));
    }
    Ok(max_dist / len as f64)
}

/// HKA-K clustering.
///
/// Each iteration costs `N + 1` evaluations: the `N` samples and the
/// un-weighted K-Means step `m'`, which is the only candidate for the
/// incumbent. A restart resets the epoch's iteration counter, reseeds the
/// mean at `k` random datapoints and the variance at its data-driven
/// initial value, and keeps the incumbent. The run also stops before any
/// iteration that would exceed the evaluation cap.
pub fn hkak_cluster<R: Rng + ?Sized>(
    data: &Dataset,
    k: usize,
    params: &HkakParams,
    rng: &mut R,
) -> Result<ClusteringResult> {
    params.validate()?;
    check_k(data, k)?;
    let dim = data.dim();
    let bounds = search_bounds(data, k)?;
    let initial = init_from_data(data, k)?;
    let initial_var = initial.var.clone();
    let hka = params.as_hka();
    let cap = params.budget_cap();
    let per_iteration = params.population + 1;

    let mut objective = |q: &[f64]| clustering_objective(q, data).unwrap_or(f64::NAN);
    let mut state = initial;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut evaluations = 0;
    let mut restarts = 0;
    let mut epoch_iter = 0;
    let mut best_trace = Vec::with_capacity(params.max_iter);

    while epoch_iter < params.max_iter && evaluations + per_iteration <= cap {
        let candidates = sample_candidates(&state, &mut objective, &hka, &bounds, rng)?;
        evaluations += params.population;
        let meas = measure(&candidates, params.measurements)?;
        let est = kalman_estimate(&state, &meas)?;

        let update = hkak_time_update(&est.mean, &est.var, data, k, params.weight, rng)?;
        let a = slowdown_factor(&meas.var, &est.var, params.alpha);
        let var = blend_variance(&state.var, &update.var, a);

        let step_value = evaluate(&mut objective, &update.step)?;
        evaluations += 1;
        if best.as_ref().is_none_or(|(_, v)| step_value < *v) {
            best = Some((update.step, step_value));
        }
        best_trace.push(best.as_ref().map_or(f64::INFINITY, |(_, v)| *v));

        state = GaussianSearchState {
            mean: update.mean,
            var,
            iteration: state.iteration + 1,
        };
        epoch_iter += 1;

        let top: Vec<&[f64]> = candidates[..params.measurements]
            .iter()
            .map(|c| c.point.as_slice())
            .collect();
        if restart_radius(&top, &bounds, k, dim)? < params.epsilon {
            restarts += 1;
            epoch_iter = 0;
            state = GaussianSearchState {
                mean: kmeans::sample_datapoints(data, k, rng)?.into_flat(),
                var: initial_var.clone(),
                iteration: 0,
            };
        }
    }

    let (best, _) = best.expect("max_iter >= 1 and cap >= N + 1 guarantee one iteration");
    finish(data, k, &best, evaluations, restarts, best_trace)
}

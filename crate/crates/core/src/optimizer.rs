//! Bounded Heuristic Kalman Algorithm.
//!
//! The search distribution is a Gaussian with diagonal covariance. Each
//! iteration draws `N` candidates, forms a "measurement" from the best
//! `N_xi` of them (their mean and per-coordinate variance), fuses that
//! measurement with the current distribution through a scalar-per-coordinate
//! Kalman update and finally relaxes the variance shrinkage with the
//! slowdown factor:
//!
//! ```text
//! L     = P / (P + V)
//! m_hat = m + L (xi - m)
//! P_hat = (1 - L) P
//! a     = alpha * min(1, s) / (min(1, s) + max_i sqrt(P_hat_i)),  s = (mean_i sqrt(V_i))^2
//! P'    = (sqrt(P) + a (sqrt(P_hat) - sqrt(P)))^2
//! ```

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Axis-aligned box `lower[i] <= x[i] <= upper[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidArgument("bounds must have at least one dimension"));
        }
        for (lo, hi) in lower.iter().zip(&upper) {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidArgument("bounds must be finite"));
            }
            if lo > hi {
                return Err(Error::InvalidArgument("lower bound exceeds upper bound"));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Concatenates the box with itself `times` times.
    pub fn tile(&self, times: usize) -> Self {
        Self {
            lower: self.lower.repeat(times),
            upper: self.upper.repeat(times),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

/// Mean and diagonal covariance of the sampling distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSearchState {
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    pub iteration: usize,
}

impl GaussianSearchState {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn std_dev(&self) -> Vec<f64> {
        self.var.iter().map(|v| libm::sqrt(*v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Mean `xi` and per-coordinate variance `v` of the best candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub xi: Vec<f64>,
    pub var: Vec<f64>,
}

/// Output of the Kalman fusion step.
#[derive(Debug, Clone, PartialEq)]
pub struct KalmanEstimate {
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    pub gain: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HkaParams {
    /// Candidates drawn per iteration (`N`).
    pub population: usize,
    /// Best candidates forming the measurement (`N_xi`).
    pub measurements: usize,
    /// Slowdown coefficient in `(0, 1]`.
    pub alpha: f64,
    pub max_iter: usize,
    /// Stop once the best `N_xi` candidates lie within this Euclidean radius
    /// of the best one. Disabled when `None`.
    pub stop_radius: Option<f64>,
}

impl HkaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population == 0 {
            return Err(Error::InvalidArgument("population must be at least 1"));
        }
        if self.measurements == 0 || self.measurements > self.population {
            return Err(Error::InvalidArgument(
                "measurement count must lie in 1..=population",
            ));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidArgument("alpha must lie in (0, 1]"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1"));
        }
        if let Some(r) = self.stop_radius {
            if r.is_nan() || r < 0.0 {
                return Err(Error::InvalidArgument("stop radius must be non-negative"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HkaOutcome {
    pub best: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub iterations: usize,
    /// Best objective value after each iteration.
    pub best_trace: Vec<f64>,
}

/// Mean at the box centre, standard deviation of one sixth of the width.
pub fn init_search_state(bounds: &Bounds) -> GaussianSearchState {
    let mean = bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(lo, hi)| (hi + lo) / 2.0)
        .collect();
    let var = bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(lo, hi)| {
            let sd = (hi - lo) / 6.0;
            sd * sd
        })
        .collect();
    GaussianSearchState {
        mean,
        var,
        iteration: 0,
    }
}

pub(crate) fn evaluate<F>(objective: &mut F, x: &[f64]) -> Result<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    let value = objective(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteObjective(value))
    }
}

/// Draws `params.population` clamped candidates and returns them sorted by
/// objective value, best first. Equal values keep their draw order.
pub fn sample_candidates<F, R>(
    state: &GaussianSearchState,
    objective: &mut F,
    params: &HkaParams,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<CandidateSolution>>
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    let dim = state.dim();
    if bounds.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bounds.dim(),
        });
    }
    if state.var.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: state.var.len(),
        });
    }
    if params.population == 0 {
        return Err(Error::InvalidArgument("population must be at least 1"));
    }
    let sd = state.std_dev();
    let mut candidates = Vec::with_capacity(params.population);
    for _ in 0..params.population {
        let mut point: Vec<f64> = state
            .mean
            .iter()
            .zip(&sd)
            .map(|(m, s)| {
                let z: f64 = StandardNormal.sample(rng);
                m + s * z
            })
            .collect();
        bounds.clamp(&mut point);
        let value = evaluate(objective, &point)?;
        candidates.push(CandidateSolution { point, value });
    }
    candidates.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(candidates)
}

/// Mean and population variance (divisor `count`) of the first `count`
/// candidates.
pub fn measure(candidates: &[CandidateSolution], count: usize) -> Result<Measurement> {
    if count == 0 {
        return Err(Error::InvalidArgument("measurement count must be at least 1"));
    }
    if count > candidates.len() {
        return Err(Error::InvalidArgument(
            "measurement count exceeds the number of candidates",
        ));
    }
    let top = &candidates[..count];
    let dim = top[0].point.len();
    let scale = 1.0 / count as f64;
    let mut xi = alloc::vec![0.0; dim];
    for c in top {
        if c.point.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.point.len(),
            });
        }
        for (acc, v) in xi.iter_mut().zip(&c.point) {
            *acc += v;
        }
    }
    xi.iter_mut().for_each(|v| *v *= scale);
    let mut var = alloc::vec![0.0; dim];
    for c in top {
        for ((acc, v), m) in var.iter_mut().zip(&c.point).zip(&xi) {
            let dv = v - m;
            *acc += dv * dv;
        }
    }
    var.iter_mut().for_each(|v| *v *= scale);
    Ok(Measurement { xi, var })
}

/// Diagonal Kalman fusion of the prior `state` with a measurement. A
/// coordinate with `p = v = 0` gets zero gain and keeps its prior.
pub fn kalman_estimate(state: &GaussianSearchState, meas: &Measurement) -> Result<KalmanEstimate> {
    let dim = state.dim();
    for len in [state.var.len(), meas.xi.len(), meas.var.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: len,
            });
        }
    }
    let mut mean = Vec::with_capacity(dim);
    let mut var = Vec::with_capacity(dim);
    let mut gain = Vec::with_capacity(dim);
    for i in 0..dim {
        let p = state.var[i];
        let denom = p + meas.var[i];
        let l = if denom > 0.0 { p / denom } else { 0.0 };
        mean.push(state.mean[i] + l * (meas.xi[i] - state.mean[i]));
        var.push((1.0 - l) * p);
        gain.push(l);
    }
    Ok(KalmanEstimate { mean, var, gain })
}

/// Slowdown factor `a` in `[0, alpha]`. The dimension in the average is the
/// full length of the sampled vector.
pub fn slowdown_factor(meas_var: &[f64], est_var: &[f64], alpha: f64) -> f64 {
    if meas_var.is_empty() {
        return 0.0;
    }
    let mean_sd = meas_var.iter().map(|v| libm::sqrt(*v)).sum::<f64>() / meas_var.len() as f64;
    let spread = (mean_sd * mean_sd).min(1.0);
    let max_sd = est_var
        .iter()
        .map(|v| libm::sqrt(*v))
        .fold(0.0_f64, f64::max);
    let denom = spread + max_sd;
    if denom > 0.0 {
        alpha * spread / denom
    } else {
        0.0
    }
}

/// Moves the standard deviations a fraction `a` of the way from `var`
/// towards `target` and returns the squared result.
pub fn blend_variance(var: &[f64], target: &[f64], a: f64) -> Vec<f64> {
    // exact at the endpoints, where the sqrt/square round trip would not be
    if a == 0.0 {
        return var.to_vec();
    }
    if a == 1.0 {
        return target.to_vec();
    }
    var.iter()
        .zip(target)
        .map(|(p, t)| {
            let sp = libm::sqrt(*p);
            let s = sp + a * (libm::sqrt(*t) - sp);
            s * s
        })
        .collect()
}

pub fn slowdown_update(var: &[f64], est_var: &[f64], meas_var: &[f64], alpha: f64) -> (Vec<f64>, f64) {
    let a = slowdown_factor(meas_var, est_var, alpha);
    (blend_variance(var, est_var, a), a)
}

/// Largest Euclidean distance from the first candidate to any of the next
/// `count - 1`.
pub fn candidate_spread(candidates: &[CandidateSolution], count: usize) -> f64 {
    let count = count.min(candidates.len());
    if count < 2 {
        return 0.0;
    }
    let best = &candidates[0].point;
    candidates[1..count]
        .iter()
        .map(|c| {
            let sq: f64 = c.point.iter().zip(best).map(|(a, b)| (a - b) * (a - b)).sum();
            libm::sqrt(sq)
        })
        .fold(0.0, f64::max)
}

/// Runs HKA from the box-derived initial distribution.
pub fn hka_minimize<F, R>(
    objective: F,
    bounds: &Bounds,
    params: &HkaParams,
    rng: &mut R,
) -> Result<HkaOutcome>
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    hka_minimize_from(init_search_state(bounds), objective, bounds, params, rng)
}

/// Runs HKA from an explicit initial distribution.
///
/// The incumbent is the best of every estimated mean `m_hat` and every
/// iteration's best sample; each iteration costs `N + 1` evaluations.
pub fn hka_minimize_from<F, R>(
    mut state: GaussianSearchState,
    mut objective: F,
    bounds: &Bounds,
    params: &HkaParams,
    rng: &mut R,
) -> Result<HkaOutcome>
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    params.validate()?;
    if state.dim() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dim(),
            found: state.dim(),
        });
    }
    let mut best: Option<CandidateSolution> = None;
    let mut evaluations = 0;
    let mut best_trace = Vec::with_capacity(params.max_iter);

    for _ in 0..params.max_iter {
        let candidates = sample_candidates(&state, &mut objective, params, bounds, rng)?;
        evaluations += params.population;
        let meas = measure(&candidates, params.measurements)?;
        let mut est = kalman_estimate(&state, &meas)?;
        // m_hat is a convex combination of in-box points; only rounding can
        // push it out.
        bounds.clamp(&mut est.mean);
        let est_value = evaluate(&mut objective, &est.mean)?;
        evaluations += 1;

        offer(&mut best, &est.mean, est_value);
        offer(&mut best, &candidates[0].point, candidates[0].value);

        let (var, _) = slowdown_update(&state.var, &est.var, &meas.var, params.alpha);
        state = GaussianSearchState {
            mean: est.mean,
            var,
            iteration: state.iteration + 1,
        };
        best_trace.push(best.as_ref().map_or(f64::INFINITY, |b| b.value));

        if let Some(radius) = params.stop_radius {
            if candidate_spread(&candidates, params.measurements) <= radius {
                break;
            }
        }
    }

    let best = best.expect("max_iter >= 1 guarantees one iteration");
    Ok(HkaOutcome {
        best: best.point,
        best_value: best.value,
        evaluations,
        iterations: best_trace.len(),
        best_trace,
    })
}

fn offer(best: &mut Option<CandidateSolution>, point: &[f64], value: f64) {
    if best.as_ref().is_none_or(|b| value < b.value) {
        *best = Some(CandidateSolution {
            point: point.to_vec(),
            value,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(population: usize, measurements: usize, alpha: f64, max_iter: usize) -> HkaParams {
        HkaParams {
            population,
            measurements,
            alpha,
            max_iter,
            stop_radius: None,
        }
    }

    fn cand(point: Vec<f64>) -> CandidateSolution {
        CandidateSolution { point, value: 0.0 }
    }

    #[test]
    fn init_from_box() {
        let s = init_search_state(&Bounds::new(vec![0.0], vec![12.0]).unwrap());
        assert_eq!(s.mean, vec![6.0]);
        assert_eq!(s.var, vec![4.0]);
        assert_eq!(s.iteration, 0);

        let s = init_search_state(&Bounds::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap());
        assert_eq!(s.mean, vec![0.0, 0.0]);
        for sd in s.std_dev() {
            assert_relative_eq!(sd, 1.0 / 3.0, epsilon = 1e-15);
        }

        let s = init_search_state(&Bounds::new(vec![5.0], vec![5.0]).unwrap());
        assert_eq!(s.mean, vec![5.0]);
        assert_eq!(s.var, vec![0.0]);
    }

    #[test]
    fn bounds_reject_bad_shapes() {
        assert!(matches!(
            Bounds::new(vec![0.0], vec![1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Bounds::new(vec![1.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
    }

    #[test]
    fn zero_variance_samples_the_mean() {
        let bounds = Bounds::new(vec![-10.0, -10.0], vec![10.0, 10.0]).unwrap();
        let state = GaussianSearchState {
            mean: vec![1.5, -2.0],
            var: vec![0.0, 0.0],
            iteration: 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cands =
            sample_candidates(&state, &mut |x: &[f64]| x[0], &params(7, 3, 0.5, 1), &bounds, &mut rng)
                .unwrap();
        assert_eq!(cands.len(), 7);
        assert!(cands.iter().all(|c| c.point == vec![1.5, -2.0]));
    }

    #[test]
    fn samples_sorted_and_inside() {
        let bounds = Bounds::new(vec![-10.0], vec![10.0]).unwrap();
        let state = GaussianSearchState {
            mean: vec![0.0],
            var: vec![1.0],
            iteration: 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut calls = 0;
        let mut f = |x: &[f64]| {
            calls += 1;
            x[0] * x[0]
        };
        let cands = sample_candidates(&state, &mut f, &params(5, 2, 0.5, 1), &bounds, &mut rng).unwrap();
        assert_eq!(calls, 5);
        assert!(cands.windows(2).all(|w| w[0].value <= w[1].value));
        assert!(cands.iter().all(|c| bounds.contains(&c.point)));
    }

    #[test]
    fn far_mean_clamps_to_upper_bound() {
        let bounds = Bounds::new(vec![0.0], vec![10.0]).unwrap();
        let state = GaussianSearchState {
            mean: vec![100.0],
            var: vec![1.0],
            iteration: 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cands =
            sample_candidates(&state, &mut |x: &[f64]| x[0], &params(10_000, 1, 0.5, 1), &bounds, &mut rng)
                .unwrap();
        assert!(cands.iter().all(|c| c.point[0] == 10.0));
    }

    #[test]
    fn ties_keep_draw_order() {
        let bounds = Bounds::new(vec![-1.0], vec![1.0]).unwrap();
        let state = GaussianSearchState {
            mean: vec![0.0],
            var: vec![0.1],
            iteration: 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut order = Vec::new();
        let mut f = |x: &[f64]| {
            order.push(x[0]);
            1.0
        };
        let cands = sample_candidates(&state, &mut f, &params(6, 1, 0.5, 1), &bounds, &mut rng).unwrap();
        let got: Vec<f64> = cands.iter().map(|c| c.point[0]).collect();
        assert_eq!(got, order);
    }

    #[test]
    fn non_finite_objective_is_reported() {
        let bounds = Bounds::new(vec![0.0], vec![1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = hka_minimize(|_: &[f64]| f64::NAN, &bounds, &params(4, 2, 0.5, 3), &mut rng).unwrap_err();
        assert!(matches!(err, Error::NonFiniteObjective(_)));
    }

    #[test]
    fn measurement_by_hand() {
        let m = measure(&[cand(vec![0.0, 0.0]), cand(vec![2.0, 2.0])], 2).unwrap();
        assert_eq!(m.xi, vec![1.0, 1.0]);
        assert_eq!(m.var, vec![1.0, 1.0]);

        let m = measure(&[cand(vec![4.0, -1.0]), cand(vec![2.0, 2.0])], 1).unwrap();
        assert_eq!(m.xi, vec![4.0, -1.0]);
        assert_eq!(m.var, vec![0.0, 0.0]);

        let m = measure(&[cand(vec![0.0]), cand(vec![3.0]), cand(vec![6.0])], 3).unwrap();
        assert_eq!(m.xi, vec![3.0]);
        assert_eq!(m.var, vec![6.0]);

        assert!(measure(&[cand(vec![0.0])], 0).is_err());
        assert!(measure(&[cand(vec![0.0])], 2).is_err());
    }

    #[test]
    fn kalman_cases() {
        let state = GaussianSearchState {
            mean: vec![0.0],
            var: vec![1.0],
            iteration: 0,
        };
        let e = kalman_estimate(&state, &Measurement { xi: vec![4.0], var: vec![1.0] }).unwrap();
        assert_eq!((e.gain[0], e.mean[0], e.var[0]), (0.5, 2.0, 0.5));

        let e = kalman_estimate(&state, &Measurement { xi: vec![4.0], var: vec![0.0] }).unwrap();
        assert_eq!((e.gain[0], e.mean[0], e.var[0]), (1.0, 4.0, 0.0));

        let certain = GaussianSearchState {
            var: vec![0.0],
            ..state.clone()
        };
        let e = kalman_estimate(&certain, &Measurement { xi: vec![4.0], var: vec![2.0] }).unwrap();
        assert_eq!((e.gain[0], e.mean[0], e.var[0]), (0.0, 0.0, 0.0));

        // 0/0 keeps the prior
        let e = kalman_estimate(&certain, &Measurement { xi: vec![4.0], var: vec![0.0] }).unwrap();
        assert_eq!((e.gain[0], e.mean[0], e.var[0]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn slowdown_cases() {
        let (p, a) = slowdown_update(&[2.0, 3.0], &[1.0, 1.0], &[0.0, 0.0], 0.7);
        assert_eq!(a, 0.0);
        assert_eq!(p, vec![2.0, 3.0]);

        assert_eq!(blend_variance(&[2.0, 3.0], &[0.25, 1.0], 1.0), vec![0.25, 1.0]);

        // both terms of the denominator vanish
        let (p, a) = slowdown_update(&[0.0], &[0.0], &[0.0], 0.7);
        assert_eq!((p, a), (vec![0.0], 0.0));
    }

    #[test]
    fn slowdown_hand_calculation() {
        // a = 0.7 * 1 / (1 + 0.5) = 7/15; p' = (1 + 7/15 * (0.5 - 1))^2 = (23/30)^2
        let (p, a) = slowdown_update(&[1.0], &[0.25], &[1.0], 0.7);
        assert_relative_eq!(a, 7.0 / 15.0, epsilon = 1e-15);
        assert_relative_eq!(p[0], 529.0 / 900.0, epsilon = 1e-15);
        assert_relative_eq!(a, 0.4667, epsilon = 5e-5);
        assert_relative_eq!(p[0], 0.5878, epsilon = 5e-5);
    }

    #[test]
    fn budget_for_one_iteration() {
        let bounds = Bounds::new(vec![-5.0, -5.0], vec![5.0, 5.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = hka_minimize(
            |x: &[f64]| x.iter().map(|v| v * v).sum(),
            &bounds,
            &params(25, 5, 0.4, 1),
            &mut rng,
        )
        .unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.evaluations, 26);
    }

    #[test]
    fn degenerate_box_returns_the_point() {
        let bounds = Bounds::new(vec![2.0, -3.0], vec![2.0, -3.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + x[1] * x[1];
        let out = hka_minimize(f, &bounds, &params(10, 3, 0.5, 20), &mut rng).unwrap();
        assert_eq!(out.best, vec![2.0, -3.0]);
        assert_eq!(out.best_value, 10.0);
    }

    #[test]
    fn stop_radius_ends_early() {
        // zero-width box: every candidate coincides, so the first iteration stops
        let bounds = Bounds::new(vec![1.0], vec![1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = HkaParams {
            stop_radius: Some(0.0),
            ..params(10, 3, 0.5, 50)
        };
        let out = hka_minimize(|x: &[f64]| x[0], &bounds, &p, &mut rng).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.evaluations, 11);
    }

    #[test]
    fn params_validation() {
        assert!(params(10, 0, 0.5, 1).validate().is_err());
        assert!(params(10, 11, 0.5, 1).validate().is_err());
        assert!(params(10, 5, 0.0, 1).validate().is_err());
        assert!(params(10, 5, 1.5, 1).validate().is_err());
        assert!(params(10, 5, 1.0, 0).validate().is_err());
        assert!(params(10, 10, 1.0, 1).validate().is_ok());
    }
}

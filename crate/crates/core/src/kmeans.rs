//! Hard-assignment centroid clustering (Lloyd's K-Means).

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::data::Dataset;
use crate::{Error, Result};

/// `k` centroids of dimension `dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    k: usize,
    dim: usize,
    centers: Vec<f64>,
}

impl CentroidSet {
    pub fn new(k: usize, dim: usize, centers: Vec<f64>) -> Result<Self> {
        if k == 0 || dim == 0 {
            return Err(Error::InvalidArgument("k and dim must be at least 1"));
        }
        if centers.len() != k * dim {
            return Err(Error::DimensionMismatch {
                expected: k * dim,
                found: centers.len(),
            });
        }
        if centers.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("centroid coordinates must be finite"));
        }
        Ok(Self { k, dim, centers })
    }

    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut k = 0;
        let mut dim = 0;
        let mut centers = Vec::new();
        for row in rows {
            let row = row.as_ref();
            if k == 0 {
                dim = row.len();
            } else if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            centers.extend_from_slice(row);
            k += 1;
        }
        Self::new(k, dim, centers)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center(&self, j: usize) -> &[f64] {
        &self.centers[j * self.dim..(j + 1) * self.dim]
    }

    pub fn centers(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.centers.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.centers
    }

    pub fn into_flat(self) -> Vec<f64> {
        self.centers
    }

    /// Largest absolute coordinate difference to `other`.
    pub fn max_shift(&self, other: &CentroidSet) -> f64 {
        self.centers
            .iter()
            .zip(&other.centers)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Cluster index per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub labels: Vec<usize>,
    pub k: usize,
}

impl Assignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if labels.iter().any(|&l| l >= k) {
            return Err(Error::InvalidArgument("label out of range"));
        }
        Ok(Self { labels, k })
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn has_empty_cluster(&self) -> bool {
        self.cluster_sizes().contains(&0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansParams {
    pub max_iter: usize,
    /// Convergence threshold on the largest centroid coordinate shift.
    pub tol: f64,
}

impl Default for KMeansParams {
    fn default() -> Self {
        Self {
            max_iter: 100,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansOutcome {
    pub centroids: CentroidSet,
    pub assignment: Assignment,
    pub objective: f64,
    pub iterations: usize,
}

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index and squared distance of the closest centroid; ties go to the
/// lowest index.
#[inline]
pub(crate) fn nearest(point: &[f64], centers: &[f64], dim: usize) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.chunks_exact(dim).enumerate() {
        let d = squared_distance(point, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn check_shapes(data: &Dataset, centroids: &CentroidSet) -> Result<()> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("dataset is empty"));
    }
    if data.dim() != centroids.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: centroids.dim(),
        });
    }
    Ok(())
}

pub fn assign_points(data: &Dataset, centroids: &CentroidSet) -> Result<Assignment> {
    check_shapes(data, centroids)?;
    let labels = data
        .points()
        .map(|p| nearest(p, centroids.as_flat(), centroids.dim()).0)
        .collect();
    Ok(Assignment {
        labels,
        k: centroids.k(),
    })
}

/// Centroid of every cluster. An empty cluster is reseeded at a uniformly
/// drawn datapoint.
pub fn update_centroids<R: Rng + ?Sized>(
    data: &Dataset,
    assignment: &Assignment,
    k: usize,
    rng: &mut R,
) -> Result<CentroidSet> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("dataset is empty"));
    }
    if assignment.labels.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: assignment.labels.len(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    let dim = data.dim();
    let mut sums = vec![0.0; k * dim];
    let mut counts = vec![0usize; k];
    for (p, &l) in data.points().zip(&assignment.labels) {
        if l >= k {
            return Err(Error::InvalidArgument("label out of range"));
        }
        counts[l] += 1;
        for (s, v) in sums[l * dim..(l + 1) * dim].iter_mut().zip(p) {
            *s += v;
        }
    }
    for (j, &count) in counts.iter().enumerate() {
        let row = &mut sums[j * dim..(j + 1) * dim];
        if count == 0 {
            let pick = rng.random_range(0..data.len());
            row.copy_from_slice(data.point(pick));
        } else {
            let inv = 1.0 / count as f64;
            row.iter_mut().for_each(|v| *v *= inv);
        }
    }
    CentroidSet::new(k, dim, sums)
}

/// One assignment pass followed by one centroid update.
pub fn kmeans_step<R: Rng + ?Sized>(
    data: &Dataset,
    centroids: &CentroidSet,
    rng: &mut R,
) -> Result<CentroidSet> {
    let assignment = assign_points(data, centroids)?;
    update_centroids(data, &assignment, centroids.k(), rng)
}

/// Sum of squared distances of every point to its assigned centroid.
pub fn sum_of_squares(data: &Dataset, centroids: &CentroidSet, assignment: &Assignment) -> f64 {
    data.points()
        .zip(&assignment.labels)
        .map(|(p, &l)| squared_distance(p, centroids.center(l)))
        .sum()
}

/// `k` distinct datapoints drawn uniformly without replacement.
pub fn sample_datapoints<R: Rng + ?Sized>(data: &Dataset, k: usize, rng: &mut R) -> Result<CentroidSet> {
    if k == 0 || k > data.len() {
        return Err(Error::InvalidArgument("k must lie in 1..=n"));
    }
    let mut centers = Vec::with_capacity(k * data.dim());
    for i in index::sample(rng, data.len(), k) {
        centers.extend_from_slice(data.point(i));
    }
    CentroidSet::new(k, data.dim(), centers)
}

/// Lloyd iterations from `init` until the largest centroid shift is at most
/// `params.tol` or `params.max_iter` passes have run.
pub fn kmeans_full<R: Rng + ?Sized>(
    data: &Dataset,
    init: CentroidSet,
    params: &KMeansParams,
    rng: &mut R,
) -> Result<KMeansOutcome> {
    if params.max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1"));
    }
    if params.tol.is_nan() || params.tol < 0.0 {
        return Err(Error::InvalidArgument("tol must be non-negative"));
    }
    check_shapes(data, &init)?;
    let mut centroids = init;
    let mut iterations = 0;
    while iterations < params.max_iter {
        let next = kmeans_step(data, &centroids, rng)?;
        iterations += 1;
        let shift = next.max_shift(&centroids);
        centroids = next;
        if shift <= params.tol {
            break;
        }
    }
    let assignment = assign_points(data, &centroids)?;
    let objective = sum_of_squares(data, &centroids, &assignment);
    Ok(KMeansOutcome {
        centroids,
        assignment,
        objective,
        iterations,
    })
}

//! Cluster validity indices and the Wilcoxon rank-sum test.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::data::Dataset;
use crate::kmeans::{squared_distance, Assignment, CentroidSet};
use crate::{Error, Result};

/// Classification of all `n (n - 1) / 2` point pairs by two partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    /// Together in both partitions.
    pub a: u64,
    /// Together in the first, apart in the second.
    pub b: u64,
    /// Apart in the first, together in the second.
    pub c: u64,
    /// Apart in both.
    pub d: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

fn dense_ids(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = BTreeMap::new();
    let ids = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (ids, map.len())
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Pair counts from the contingency table of the two labelings.
pub fn pair_counts(u: &[usize], v: &[usize]) -> Result<PairCounts> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let (u, ku) = dense_ids(u);
    let (v, kv) = dense_ids(v);
    let mut table = vec![0u64; ku * kv];
    let mut rows = vec![0u64; ku];
    let mut cols = vec![0u64; kv];
    for (&i, &j) in u.iter().zip(&v) {
        table[i * kv + j] += 1;
        rows[i] += 1;
        cols[j] += 1;
    }
    let a: u64 = table.iter().map(|&x| choose2(x)).sum();
    let same_u: u64 = rows.iter().map(|&x| choose2(x)).sum();
    let same_v: u64 = cols.iter().map(|&x| choose2(x)).sum();
    let total = choose2(u.len() as u64);
    let b = same_u - a;
    let c = same_v - a;
    Ok(PairCounts {
        a,
        b,
        c,
        d: total - a - b - c,
    })
}

/// Adjusted Rand index in the pair-counting form
///
/// ```text
/// ARI = (C (a + d) - [(a + b)(a + c) + (c + d)(b + d)])
///     / (C^2       - [(a + b)(a + c) + (c + d)(b + d)]),   C = n (n - 1) / 2
/// ```
///
/// The denominator vanishes only when both partitions are the single
/// cluster or both are all singletons; those identical partitions score 1.
pub fn adjusted_rand_index(u: &[usize], v: &[usize]) -> Result<f64> {
    if u.len() < 2 {
        return Err(Error::InvalidArgument("ARI needs at least two points"));
    }
    let PairCounts { a, b, c, d } = pair_counts(u, v)?;
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let total = a + b + c + d;
    let expected = (a + b) * (a + c) + (c + d) * (b + d);
    let denom = total * total - expected;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((total * (a + d) - expected) / denom)
}

/// Adjusted Rand index in Hubert and Arabie's contingency-table form,
/// `(index - expected) / (max - expected)`. Algebraically identical to
/// [`adjusted_rand_index`].
pub fn adjusted_rand_index_hubert_arabie(u: &[usize], v: &[usize]) -> Result<f64> {
    if u.len() < 2 {
        return Err(Error::InvalidArgument("ARI needs at least two points"));
    }
    let PairCounts { a, b, c, .. } = pair_counts(u, v)?;
    let total = choose2(u.len() as u64) as f64;
    let index = a as f64;
    let same_u = (a + b) as f64;
    let same_v = (a + c) as f64;
    let expected = same_u * same_v / total;
    let max = (same_u + same_v) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

fn check_clustering(data: &Dataset, assignment: &Assignment, centroids: &CentroidSet) -> Result<()> {
    if assignment.labels.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: assignment.labels.len(),
        });
    }
    if centroids.dim() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: centroids.dim(),
        });
    }
    if assignment.labels.iter().any(|&l| l >= centroids.k()) {
        return Err(Error::InvalidArgument("label out of range"));
    }
    Ok(())
}

/// Sum of (un-squared) distances from every point to its centroid.
pub fn intra_distance(data: &Dataset, assignment: &Assignment, centroids: &CentroidSet) -> Result<f64> {
    check_clustering(data, assignment, centroids)?;
    Ok(data
        .points()
        .zip(&assignment.labels)
        .map(|(p, &l)| libm::sqrt(squared_distance(p, centroids.center(l))))
        .sum())
}

/// Davies-Bouldin index with mean point-to-centroid distance as scatter and
/// centroid distance as separation.
pub fn davies_bouldin(data: &Dataset, assignment: &Assignment, centroids: &CentroidSet) -> Result<f64> {
    check_clustering(data, assignment, centroids)?;
    let k = centroids.k();
    if k < 2 {
        return Err(Error::UndefinedMetric("Davies-Bouldin needs at least two clusters"));
    }
    let mut scatter = vec![0.0; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in data.points().zip(&assignment.labels) {
        scatter[l] += libm::sqrt(squared_distance(p, centroids.center(l)));
        counts[l] += 1;
    }
    for (s, &c) in scatter.iter_mut().zip(&counts) {
        if c == 0 {
            return Err(Error::UndefinedMetric("Davies-Bouldin with an empty cluster"));
        }
        *s /= c as f64;
    }
    let mut total = 0.0;
    for i in 0..k {
        let mut worst = f64::NEG_INFINITY;
        for j in (0..k).filter(|&j| j != i) {
            let sep = libm::sqrt(squared_distance(centroids.center(i), centroids.center(j)));
            if sep == 0.0 {
                return Err(Error::UndefinedMetric("Davies-Bouldin with coincident centroids"));
            }
            worst = worst.max((scatter[i] + scatter[j]) / sep);
        }
        total += worst;
    }
    Ok(total / k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    TwoSided,
    /// `x` tends to be smaller than `y`.
    Less,
    /// `x` tends to be larger than `y`.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankSumMethod {
    /// Exact null distribution when there are no ties and at most
    /// [`EXACT_MAX_TOTAL`] observations, normal approximation otherwise.
    #[default]
    Auto,
    Exact,
    Normal,
}

/// Largest pooled sample size for which [`RankSumMethod::Auto`] uses the
/// exact distribution.
pub const EXACT_MAX_TOTAL: usize = 20;

/// Midranks (1-based) of `values`.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)
}

/// Wilcoxon rank-sum (Mann-Whitney) test of `x` against `y`.
pub fn wilcoxon_rank_sum(x: &[f64], y: &[f64], alternative: Alternative) -> Result<f64> {
    wilcoxon_rank_sum_with(x, y, alternative, RankSumMethod::Auto)
}

pub fn wilcoxon_rank_sum_with(
    x: &[f64],
    y: &[f64],
    alternative: Alternative,
    method: RankSumMethod,
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidArgument("rank-sum test needs two non-empty samples"));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("rank-sum test samples contain NaN"));
    }
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let ranks = midranks(&pooled);
    let nx = x.len();
    let ny = y.len();
    let rank_sum: f64 = ranks[..nx].iter().sum();
    let u = rank_sum - (nx * (nx + 1)) as f64 / 2.0;

    let mut sorted = ranks.clone();
    sorted.sort_by(f64::total_cmp);
    let tie_term: f64 = sorted
        .chunk_by(|a, b| a == b)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum();
    let has_ties = tie_term > 0.0;

    let exact = match method {
        RankSumMethod::Exact if has_ties => {
            return Err(Error::InvalidArgument("exact rank-sum test requires untied samples"))
        }
        RankSumMethod::Exact => true,
        RankSumMethod::Normal => false,
        RankSumMethod::Auto => !has_ties && nx + ny <= EXACT_MAX_TOTAL,
    };
    if exact {
        return Ok(exact_p_value(u, nx, ny, alternative));
    }

    let n = (nx + ny) as f64;
    let mean = (nx * ny) as f64 / 2.0;
    let var = (nx * ny) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(1.0);
    }
    let sd = libm::sqrt(var);
    let p = match alternative {
        Alternative::Less => standard_normal_cdf((u - mean + 0.5) / sd),
        Alternative::Greater => 1.0 - standard_normal_cdf((u - mean - 0.5) / sd),
        Alternative::TwoSided => {
            let z = ((u - mean).abs() - 0.5).max(0.0) / sd;
            2.0 * (1.0 - standard_normal_cdf(z))
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Counts of rank sums over all `C(nx + ny, nx)` subsets, indexed by the
/// Mann-Whitney `U` statistic.
fn u_distribution(nx: usize, ny: usize) -> Vec<f64> {
    // ways[i][u]: subsets of size i from the first j ranks with statistic u,
    // rolled over j.
    let max_u = nx * ny;
    let mut ways = vec![vec![0.0f64; max_u + 1]; nx + 1];
    ways[0][0] = 1.0;
    for j in 1..=(nx + ny) {
        for i in (1..=nx.min(j)).rev() {
            // choosing rank j as the i-th smallest adds (j - i) to U
            let shift = j - i;
            if shift > ny {
                continue;
            }
            let (lower, upper) = ways.split_at_mut(i);
            let prev = &lower[i - 1];
            for u in (shift..=max_u).rev() {
                upper[0][u] += prev[u - shift];
            }
        }
    }
    ways.swap_remove(nx)
}

fn exact_p_value(u: f64, nx: usize, ny: usize, alternative: Alternative) -> f64 {
    let dist = u_distribution(nx, ny);
    let total: f64 = dist.iter().sum();
    let u = libm::round(u) as usize;
    let lower: f64 = dist[..=u].iter().sum::<f64>() / total;
    let upper: f64 = dist[u..].iter().sum::<f64>() / total;
    match alternative {
        Alternative::Less => lower,
        Alternative::Greater => upper,
        Alternative::TwoSided => (2.0 * lower.min(upper)).min(1.0),
    }
}

//! In-memory datasets and the two synthetic benchmark generators.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::optimizer::Bounds;
use crate::{Error, Result};

/// `n` points of dimension `d`, stored row-major, with optional class labels.
///
/// Labels are only ever used for external validation; the clustering
/// routines never read them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    dim: usize,
    points: Vec<f64>,
    labels: Option<Vec<usize>>,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        points: Vec<f64>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1"));
        }
        if !points.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(
                "point buffer length is not a multiple of the dimension",
            ));
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("coordinates must be finite"));
        }
        let n = points.len() / dim;
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            points,
            labels,
        })
    }

    pub fn from_rows<I, R>(name: impl Into<String>, rows: I, labels: Option<Vec<usize>>) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut dim = None;
        let mut points = Vec::new();
        for row in rows {
            let row = row.as_ref();
            match dim {
                None => dim = Some(row.len()),
                Some(d) if d != row.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: row.len(),
                    })
                }
                Some(_) => {}
            }
            points.extend_from_slice(row);
        }
        let dim = dim.ok_or(Error::InvalidArgument("no rows given"))?;
        Self::new(name, dim, points, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }

    /// Row-major coordinate buffer.
    pub fn as_flat(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Number of distinct classes when labels are present.
    pub fn class_count(&self) -> Option<usize> {
        self.labels.as_ref().map(|l| {
            let mut seen: Vec<usize> = l.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }
}

/// Per-dimension minimum and maximum over all points.
pub fn bounding_hyperbox(data: &Dataset) -> Result<Bounds> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("dataset is empty"));
    }
    let mut lower = data.point(0).to_vec();
    let mut upper = lower.clone();
    for p in data.points().skip(1) {
        for (i, v) in p.iter().enumerate() {
            lower[i] = lower[i].min(*v);
            upper[i] = upper[i].max(*v);
        }
    }
    Bounds::new(lower, upper)
}

/// Class means of the six-component Gaussian mixture.
pub const ARTSET1_MEANS: [[f64; 2]; 6] = [
    [1.0, 1.0],
    [5.0, 15.0],
    [15.0, -5.0],
    [10.0, 10.0],
    [20.0, 20.0],
    [25.0, -7.0],
];

/// Isotropic per-class variances (the diagonal of each covariance matrix).
pub const ARTSET1_VARIANCES: [f64; 6] = [1.0, 1.2, 1.5, 1.0, 1.0, 2.0];

pub const ARTSET1_CLASS_SIZE: usize = 100;

/// Per-class uniform range, shared by every dimension.
pub const ARTSET2_RANGES: [(f64, f64); 5] = [
    (85.0, 100.0),
    (70.0, 85.0),
    (55.0, 70.0),
    (40.0, 55.0),
    (25.0, 40.0),
];

pub const ARTSET2_CLASS_SIZE: usize = 50;

/// 600 two-dimensional points from six independent bivariate normals,
/// 100 per class, classes in order.
pub fn generate_artset1<R: Rng + ?Sized>(rng: &mut R) -> Dataset {
    let n = ARTSET1_MEANS.len() * ARTSET1_CLASS_SIZE;
    let mut points = Vec::with_capacity(n * 2);
    let mut labels = Vec::with_capacity(n);
    for (class, (mu, var)) in ARTSET1_MEANS.iter().zip(ARTSET1_VARIANCES).enumerate() {
        let sd = libm::sqrt(var);
        for _ in 0..ARTSET1_CLASS_SIZE {
            for m in mu {
                let z: f64 = StandardNormal.sample(rng);
                points.push(m + sd * z);
            }
            labels.push(class);
        }
    }
    Dataset::new("artset1", 2, points, Some(labels)).expect("generator output is well formed")
}

/// 250 three-dimensional points, 50 per class, each coordinate uniform on
/// the class range.
pub fn generate_artset2<R: Rng + ?Sized>(rng: &mut R) -> Dataset {
    let n = ARTSET2_RANGES.len() * ARTSET2_CLASS_SIZE;
    let mut points = Vec::with_capacity(n * 3);
    let mut labels = Vec::with_capacity(n);
    for (class, (lo, hi)) in ARTSET2_RANGES.iter().enumerate() {
        for _ in 0..ARTSET2_CLASS_SIZE {
            for _ in 0..3 {
                points.push(rng.random_range(*lo..*hi));
            }
            labels.push(class);
        }
    }
    Dataset::new("artset2", 3, points, Some(labels)).expect("generator output is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_malformed_input() {
        assert!(Dataset::new("x", 0, vec![], None).is_err());
        assert!(Dataset::new("x", 2, vec![1.0, 2.0, 3.0], None).is_err());
        assert!(Dataset::new("x", 1, vec![f64::NAN], None).is_err());
        assert!(Dataset::new("x", 1, vec![1.0, 2.0], Some(vec![0])).is_err());
        assert!(Dataset::from_rows("x", [vec![1.0, 2.0], vec![3.0]], None).is_err());
    }

    #[test]
    fn hyperbox_by_hand() {
        let d = Dataset::from_rows("x", [[0.0, 5.0], [2.0, 3.0]], None).unwrap();
        let b = bounding_hyperbox(&d).unwrap();
        assert_eq!(b.lower(), &[0.0, 3.0]);
        assert_eq!(b.upper(), &[2.0, 5.0]);

        let d = Dataset::from_rows("x", [[7.0, -1.0]], None).unwrap();
        let b = bounding_hyperbox(&d).unwrap();
        assert_eq!(b.lower(), b.upper());
        assert_eq!(b.lower(), &[7.0, -1.0]);

        let empty = Dataset::new("x", 2, vec![], None).unwrap();
        assert!(bounding_hyperbox(&empty).is_err());
    }

    #[test]
    fn artset1_shape_and_determinism() {
        let a = generate_artset1(&mut ChaCha8Rng::seed_from_u64(4));
        let b = generate_artset1(&mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(a, b);
        assert_eq!((a.len(), a.dim(), a.class_count()), (600, 2, Some(6)));
        let labels = a.labels().unwrap();
        for class in 0..6 {
            assert_eq!(labels.iter().filter(|&&l| l == class).count(), 100);
        }
    }

    #[test]
    fn artset1_class_mean_converges() {
        // Law of large numbers on the class-0 component: 10^5 draws from
        // N((1,1), I) have a sample mean within 0.05 of (1,1).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sum = [0.0; 2];
        let draws = 1000;
        for _ in 0..draws {
            let d = generate_artset1(&mut rng);
            for p in d.points().take(ARTSET1_CLASS_SIZE) {
                sum[0] += p[0];
                sum[1] += p[1];
            }
        }
        let total = (draws * ARTSET1_CLASS_SIZE) as f64;
        assert!((sum[0] / total - 1.0).abs() < 0.05);
        assert!((sum[1] / total - 1.0).abs() < 0.05);
    }

    #[test]
    fn artset2_ranges() {
        let d = generate_artset2(&mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!((d.len(), d.dim(), d.class_count()), (250, 3, Some(5)));
        let labels = d.labels().unwrap();
        for (p, &l) in d.points().zip(labels) {
            let (lo, hi) = ARTSET2_RANGES[l];
            assert!(p.iter().all(|v| (lo..hi).contains(v)));
        }
        let b = bounding_hyperbox(&d).unwrap();
        assert!(b.lower().iter().all(|v| *v >= 25.0));
        assert!(b.upper().iter().all(|v| *v <= 100.0));
        assert!(d.points().all(|p| b.contains(p)));
    }
}

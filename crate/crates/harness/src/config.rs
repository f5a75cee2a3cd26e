//! Experiment configuration, parameter presets and the flat config file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;
use hka_core::clustering::HkakParams;
use hka_core::data::Dataset;
use hka_core::kmeans::KMeansParams;
use hka_core::optimizer::HkaParams;

use crate::datasets::{find_builtin, load_builtin, read_csv_file, LabelColumn, DEFAULT_DATA_SEED};
use crate::error::{HarnessError, Result};

pub const DEFAULT_REPLICATES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmKind {
    Hka,
    Hkak,
    Kmeans,
}

/// Named parameter sets: the prescribed-parameter study and the
/// equal-budget study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Preset {
    #[default]
    Table2,
    Table11,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Hka(HkaParams),
    Hkak(HkakParams),
    KMeans(KMeansParams),
}

impl Algorithm {
    pub fn preset(kind: AlgorithmKind, preset: Preset) -> Self {
        match (kind, preset) {
            (AlgorithmKind::Hkak, _) => Algorithm::Hkak(HkakParams::default()),
            (AlgorithmKind::Hka, Preset::Table2) => Algorithm::Hka(HkaParams {
                population: 30,
                measurements: 6,
                alpha: 0.8,
                max_iter: 500,
                stop_radius: None,
            }),
            (AlgorithmKind::Hka, Preset::Table11) => Algorithm::Hka(HkaParams {
                population: 20,
                measurements: 10,
                alpha: 0.8,
                max_iter: 250,
                stop_radius: None,
            }),
            (AlgorithmKind::Kmeans, _) => Algorithm::KMeans(KMeansParams::default()),
        }
    }

    pub fn kind(&self) -> AlgorithmKind {
        match self {
            Algorithm::Hka(_) => AlgorithmKind::Hka,
            Algorithm::Hkak(_) => AlgorithmKind::Hkak,
            Algorithm::KMeans(_) => AlgorithmKind::Kmeans,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checked = match self {
            Algorithm::Hka(p) => p.validate(),
            Algorithm::Hkak(p) => p.validate(),
            Algorithm::KMeans(p) if p.max_iter == 0 => {
                Err(hka_core::Error::InvalidArgument("max_iter must be at least 1"))
            }
            Algorithm::KMeans(p) if p.tol.is_nan() || p.tol < 0.0 => {
                Err(hka_core::Error::InvalidArgument("tol must be non-negative"))
            }
            Algorithm::KMeans(_) => Ok(()),
        };
        checked.map_err(|e| HarnessError::usage(e.to_string()))
    }
}

/// Per-parameter values that replace the preset's.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamOverrides {
    pub population: Option<usize>,
    pub measurements: Option<usize>,
    pub alpha: Option<f64>,
    pub weight: Option<f64>,
    pub epsilon: Option<f64>,
    pub max_iter: Option<usize>,
}

impl ParamOverrides {
    pub fn apply(&self, algorithm: &mut Algorithm) -> Result<()> {
        let reject = |flag: &str, name: &str| {
            Err(HarnessError::usage(format!("--{flag} does not apply to {name}")))
        };
        match algorithm {
            Algorithm::Hka(p) => {
                if self.weight.is_some() {
                    return reject("w", "hka");
                }
                if self.epsilon.is_some() {
                    return reject("epsilon", "hka");
                }
                set(&mut p.population, self.population);
                set(&mut p.measurements, self.measurements);
                set(&mut p.alpha, self.alpha);
                set(&mut p.max_iter, self.max_iter);
            }
            Algorithm::Hkak(p) => {
                set(&mut p.population, self.population);
                set(&mut p.measurements, self.measurements);
                set(&mut p.alpha, self.alpha);
                set(&mut p.weight, self.weight);
                set(&mut p.epsilon, self.epsilon);
                set(&mut p.max_iter, self.max_iter);
            }
            Algorithm::KMeans(p) => {
                for (flag, given) in [
                    ("n", self.population.is_some()),
                    ("n-xi", self.measurements.is_some()),
                    ("alpha", self.alpha.is_some()),
                    ("w", self.weight.is_some()),
                    ("epsilon", self.epsilon.is_some()),
                ] {
                    if given {
                        return reject(flag, "kmeans");
                    }
                }
                set(&mut p.max_iter, self.max_iter);
            }
        }
        Ok(())
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    Builtin { name: String, data_seed: u64 },
    Csv {
        path: PathBuf,
        label: Option<LabelColumn>,
        header: bool,
    },
}

impl DatasetSpec {
    pub fn builtin(name: impl Into<String>) -> Self {
        DatasetSpec::Builtin {
            name: name.into(),
            data_seed: DEFAULT_DATA_SEED,
        }
    }

    pub fn load(&self) -> Result<Dataset> {
        match self {
            DatasetSpec::Builtin { name, data_seed } => load_builtin(name, *data_seed),
            DatasetSpec::Csv { path, label, header } => {
                Ok(read_csv_file(path, label.as_ref(), *header)?.dataset)
            }
        }
    }

    /// `K` to use when none is given: the bundled class count, else the
    /// number of distinct labels.
    pub fn default_k(&self, data: &Dataset) -> Option<usize> {
        match self {
            DatasetSpec::Builtin { name, .. } => find_builtin(name).map(|b| b.k),
            DatasetSpec::Csv { .. } => data.class_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub algorithm: Algorithm,
    pub k: Option<usize>,
    pub replicates: usize,
    /// Replicate `i` runs with seed `base_seed + i`.
    pub base_seed: u64,
    pub parallel: bool,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSpec, algorithm: Algorithm) -> Self {
        Self {
            dataset,
            algorithm,
            k: None,
            replicates: DEFAULT_REPLICATES,
            base_seed: 0,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(HarnessError::usage("replicates must be at least 1"));
        }
        if self.k == Some(0) {
            return Err(HarnessError::usage("k must be at least 1"));
        }
        self.algorithm.validate()
    }
}

/// Keys accepted in a config file, spelled like the long flags.
pub const CONFIG_KEYS: &[&str] = &[
    "dataset", "csv", "label-col", "no-header", "algo", "k", "preset", "replicates", "seed",
    "data-seed", "out", "format", "n", "n-xi", "alpha", "w", "epsilon", "maxiter", "parallel",
];

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// underscores in keys are read as dashes.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('_', "-").to_ascii_lowercase();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(HarnessError::usage(format!("config line {}: unknown key '{key}'", i + 1)));
        }
        map.insert(key, value.trim().to_owned());
    }
    Ok(map)
}

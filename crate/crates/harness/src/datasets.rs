//! CSV ingestion and the bundled benchmark datasets.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use hka_core::data::{generate_artset1, generate_artset2, Dataset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{HarnessError, Result};

/// Marks a missing value; rows containing it are dropped.
pub const MISSING: &str = "?";

/// Seed for the synthetic sets when none is given.
pub const DEFAULT_DATA_SEED: u64 = 0;

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    /// 0-based column index.
    Index(usize),
    /// Header name; requires a header line.
    Name(String),
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.trim().parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.trim().to_owned()),
        })
    }
}

impl fmt::Display for LabelColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelColumn::Index(i) => write!(f, "{i}"),
            LabelColumn::Name(n) => f.write_str(n),
        }
    }
}

/// A parsed table together with what the loader discarded or renamed.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub dataset: Dataset,
    /// Original label strings, indexed by dense label id.
    pub class_names: Vec<String>,
    /// Rows skipped because they held the missing-value marker.
    pub dropped_rows: usize,
}

/// Reads a comma-separated table of reals with an optional label column.
///
/// Labels become dense ids `0..K` in order of first appearance. Rows with a
/// `?` entry are dropped; any other non-numeric feature is an error naming
/// its line.
pub fn load_csv(path: impl AsRef<Path>, label: Option<&LabelColumn>, header: bool) -> Result<Dataset> {
    Ok(read_csv_file(path, label, header)?.dataset)
}

pub fn read_csv_file(path: impl AsRef<Path>, label: Option<&LabelColumn>, header: bool) -> Result<CsvTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| HarnessError::Read {
        path: path.to_owned(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_csv(file, &name, label, header)
}

pub fn parse_csv<R: Read>(input: R, name: &str, label: Option<&LabelColumn>, header: bool) -> Result<CsvTable> {
    let parse_err = |line: u64, message: String| HarnessError::Parse {
        source_name: name.to_owned(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let mut width = None;
    let label_idx = match label {
        None => None,
        Some(LabelColumn::Index(i)) => Some(*i),
        Some(LabelColumn::Name(n)) => {
            if !header {
                return Err(HarnessError::usage(format!(
                    "label column '{n}' given by name but the file has no header"
                )));
            }
            let headers = reader
                .headers()
                .map_err(|e| parse_err(1, e.to_string()))?;
            width = Some(headers.len());
            let idx = headers.iter().position(|h| h == n).ok_or_else(|| {
                HarnessError::Data(format!("{name}: no column named '{n}'"))
            })?;
            Some(idx)
        }
    };
    if header && width.is_none() {
        width = Some(reader.headers().map_err(|e| parse_err(1, e.to_string()))?.len());
    }

    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut class_names = Vec::new();
    let mut dropped_rows = 0;
    let mut rows = 0;

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let w = *width.get_or_insert(record.len());
        if record.len() != w {
            return Err(parse_err(line, format!("expected {w} fields, found {}", record.len())));
        }
        if let Some(i) = label_idx {
            if i >= w {
                return Err(HarnessError::Data(format!(
                    "{name}: label column {i} is out of range for {w} columns"
                )));
            }
        }
        if record.iter().any(|f| f == MISSING) {
            dropped_rows += 1;
            continue;
        }
        for (col, field) in record.iter().enumerate() {
            if Some(col) == label_idx {
                let next = ids.len();
                let id = *ids.entry(field.to_owned()).or_insert_with(|| {
                    class_names.push(field.to_owned());
                    next
                });
                labels.push(id);
                continue;
            }
            let value: f64 = field
                .parse()
                .map_err(|_| parse_err(line, format!("column {col}: '{field}' is not a number")))?;
            if !value.is_finite() {
                return Err(parse_err(line, format!("column {col}: '{field}' is not finite")));
            }
            points.push(value);
        }
        rows += 1;
    }

    let w = width.unwrap_or(0);
    let dim = w.saturating_sub(usize::from(label_idx.is_some()));
    if rows == 0 || dim == 0 {
        return Err(HarnessError::Data(format!("{name}: no usable rows or feature columns")));
    }
    let dataset = Dataset::new(name, dim, points, label.map(|_| labels))
        .map_err(|e| HarnessError::Data(format!("{name}: {e}")))?;
    Ok(CsvTable {
        dataset,
        class_names,
        dropped_rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Table(&'static str),
    Artset1,
    Artset2,
}

/// A dataset that ships with the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Builtin {
    pub name: &'static str,
    /// Number of classes, used as the default `K`.
    pub k: usize,
    source: Source,
}

pub const BUILTINS: [Builtin; 7] = [
    Builtin { name: "artset1", k: 6, source: Source::Artset1 },
    Builtin { name: "artset2", k: 5, source: Source::Artset2 },
    Builtin { name: "iris", k: 3, source: Source::Table(include_str!("../data/iris.csv")) },
    Builtin { name: "wine", k: 3, source: Source::Table(include_str!("../data/wine.csv")) },
    Builtin { name: "glass", k: 6, source: Source::Table(include_str!("../data/glass.csv")) },
    Builtin { name: "cmc", k: 3, source: Source::Table(include_str!("../data/cmc.csv")) },
    Builtin { name: "cancer", k: 2, source: Source::Table(include_str!("../data/cancer.csv")) },
];

pub fn find_builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name.eq_ignore_ascii_case(name))
}

impl Builtin {
    /// Materializes the dataset; `data_seed` only affects the synthetic sets.
    pub fn load(&self, data_seed: u64) -> Result<Dataset> {
        match self.source {
            Source::Artset1 => Ok(generate_artset1(&mut ChaCha8Rng::seed_from_u64(data_seed))),
            Source::Artset2 => Ok(generate_artset2(&mut ChaCha8Rng::seed_from_u64(data_seed))),
            Source::Table(text) => {
                // every bundled table has a header and the class in its last column
                let columns = text.lines().next().map_or(0, |l| l.split(',').count());
                let label = LabelColumn::Index(columns.saturating_sub(1));
                Ok(parse_csv(text.as_bytes(), self.name, Some(&label), true)?.dataset)
            }
        }
    }
}

pub fn load_builtin(name: &str, data_seed: u64) -> Result<Dataset> {
    find_builtin(name)
        .ok_or_else(|| {
            let known: Vec<_> = BUILTINS.iter().map(|b| b.name).collect();
            HarnessError::usage(format!("unknown dataset '{name}' (known: {})", known.join(", ")))
        })?
        .load(data_seed)
}

/// Writes `data` as CSV with columns `x1..xd` and, when labelled, `class`.
pub fn write_dataset_csv<W: std::io::Write>(data: &Dataset, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut head: Vec<String> = (1..=data.dim()).map(|i| format!("x{i}")).collect();
    if data.labels().is_some() {
        head.push("class".into());
    }
    w.write_record(&head)?;
    for (i, p) in data.points().enumerate() {
        let mut row: Vec<String> = p.iter().map(f64::to_string).collect();
        if let Some(l) = data.labels() {
            row.push(l[i].to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

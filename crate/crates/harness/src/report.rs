//! Summaries, significance tests and result files.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use clap::ValueEnum;
use hka_core::metrics::{wilcoxon_rank_sum, Alternative};

use crate::error::{HarnessError, Result};
use crate::experiment::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Intra,
    J,
    Ari,
    Db,
    #[value(name = "time_s", alias = "time")]
    TimeS,
    Evals,
    Iterations,
    Restarts,
}

impl Metric {
    /// Metrics shown in a summary table, in display order.
    pub const SUMMARY: [Metric; 6] = [
        Metric::Intra,
        Metric::J,
        Metric::Ari,
        Metric::Db,
        Metric::TimeS,
        Metric::Evals,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Intra => "Intra",
            Metric::J => "J",
            Metric::Ari => "ARI",
            Metric::Db => "DB",
            Metric::TimeS => "Time (s)",
            Metric::Evals => "Evals",
            Metric::Iterations => "Iterations",
            Metric::Restarts => "Restarts",
        }
    }

    pub fn of(self, r: &RunRecord) -> Option<f64> {
        match self {
            Metric::Intra => Some(r.intra),
            Metric::J => Some(r.j),
            Metric::Ari => r.ari,
            Metric::Db => r.db,
            Metric::TimeS => Some(r.time_s),
            Metric::Evals => Some(r.evals as f64),
            Metric::Iterations => Some(r.iterations as f64),
            Metric::Restarts => Some(r.restarts as f64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Tail {
    /// The first sample tends to be smaller.
    #[default]
    Less,
    Greater,
    TwoSided,
}

impl From<Tail> for Alternative {
    fn from(t: Tail) -> Self {
        match t {
            Tail::Less => Alternative::Less,
            Tail::Greater => Alternative::Greater,
            Tail::TwoSided => Alternative::TwoSided,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub mean: f64,
    /// Sample standard deviation (divisor `n - 1`); 0 for one value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Aggregate {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(Self {
            mean: mean.clamp(min, max),
            std,
            min,
            max,
            count: values.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub replicates: usize,
    /// One entry per metric of [`Metric::SUMMARY`]; `None` when no replicate
    /// produced a value.
    pub rows: Vec<(Metric, Option<Aggregate>)>,
}

impl SummaryTable {
    pub fn get(&self, metric: Metric) -> Option<&Aggregate> {
        self.rows
            .iter()
            .find(|(m, _)| *m == metric)
            .and_then(|(_, a)| a.as_ref())
    }
}

pub fn column(records: &[RunRecord], metric: Metric) -> Vec<f64> {
    records.iter().filter_map(|r| metric.of(r)).collect()
}

pub fn summarize(records: &[RunRecord]) -> Result<SummaryTable> {
    if records.is_empty() {
        return Err(HarnessError::Data("no records to summarize".into()));
    }
    Ok(SummaryTable {
        replicates: records.len(),
        rows: Metric::SUMMARY
            .iter()
            .map(|&m| (m, Aggregate::of(&column(records, m))))
            .collect(),
    })
}

/// Rank-sum p-value for `metric` of `a` against `b`.
pub fn compare(a: &[RunRecord], b: &[RunRecord], metric: Metric, tail: Tail) -> Result<f64> {
    let (x, y) = (column(a, metric), column(b, metric));
    if x.is_empty() || y.is_empty() {
        return Err(HarnessError::Data(format!(
            "metric {} has no values in one of the samples",
            metric.label()
        )));
    }
    Ok(wilcoxon_rank_sum(&x, &y, tail.into())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

pub fn write_records_csv<W: Write>(records: &[RunRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(["seed", "intra", "j", "ari", "db", "time_s", "evals", "iterations", "restarts"])?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(input: R, name: &str) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    reader
        .deserialize()
        .map(|row| {
            row.map_err(|e| HarnessError::Parse {
                source_name: name.to_owned(),
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn read_records_file(path: &Path) -> Result<Vec<RunRecord>> {
    let file = File::open(path).map_err(|source| HarnessError::Read {
        path: path.to_owned(),
        source,
    })?;
    read_records_csv(file, &path.display().to_string())
}

/// Markdown table with mean, std, min and max rows for every metric.
pub fn summary_markdown(title: &str, summary: &SummaryTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {title} | | {} runs |", summary.replicates);
    s.push_str("|---|---|---:|\n");
    for (metric, agg) in &summary.rows {
        let cells: [(&str, Option<f64>); 4] = [
            ("mean", agg.map(|a| a.mean)),
            ("std", agg.map(|a| a.std)),
            ("min", agg.map(|a| a.min)),
            ("max", agg.map(|a| a.max)),
        ];
        for (i, (stat, value)) in cells.iter().enumerate() {
            let name = if i == 0 { metric.label() } else { "" };
            let value = value.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.4}"));
            let _ = writeln!(s, "| {name} | {stat} | {value} |");
        }
    }
    s
}

/// Records as CSV, or the summary as markdown.
pub fn render_results(records: &[RunRecord], summary: &SummaryTable, title: &str, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_records_csv(records, &mut buf).expect("writing to memory cannot fail");
            buf
        }
        Format::Markdown => summary_markdown(title, summary).into_bytes(),
    }
}

/// Writes [`render_results`] to `path`, or to stdout when `path` is `None`.
pub fn emit_results(
    records: &[RunRecord],
    summary: &SummaryTable,
    title: &str,
    format: Format,
    path: Option<&Path>,
) -> Result<()> {
    let bytes = render_results(records, summary, title, format);
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| HarnessError::Write {
            path: p.to_owned(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| HarnessError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

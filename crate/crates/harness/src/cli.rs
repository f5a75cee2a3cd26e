//! The `hka` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{
    parse_config, Algorithm, AlgorithmKind, DatasetSpec, ExperimentConfig, ParamOverrides, Preset,
    DEFAULT_REPLICATES,
};
use crate::datasets::{load_builtin, write_dataset_csv, LabelColumn, DEFAULT_DATA_SEED};
use crate::error::{HarnessError, Result};
use crate::experiment::run_experiment;
use crate::report::{
    compare, emit_results, read_records_file, render_results, summarize, summary_markdown, Format,
    Metric, Tail,
};

#[derive(Debug, Parser)]
#[command(name = "hka", version, about = "HKA and HKA-K clustering experiments")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run replicated clustering experiments.
    Run(Box<RunArgs>),
    /// Rank-sum test between two result files.
    Compare(CompareArgs),
    /// Write a synthetic dataset as CSV.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bundled dataset: artset1, artset2, iris, wine, glass, cmc, cancer.
    #[arg(long, conflicts_with = "csv")]
    dataset: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Label column of the CSV, as a 0-based index or a header name.
    #[arg(long)]
    label_col: Option<LabelColumn>,
    /// The CSV has no header line.
    #[arg(long)]
    no_header: bool,
    #[arg(long, value_enum)]
    algo: Option<AlgorithmKind>,
    /// Number of clusters; defaults to the dataset's class count.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long)]
    replicates: Option<usize>,
    /// Base seed; replicate i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Seed for generating artset1 / artset2.
    #[arg(long)]
    data_seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_xi: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    w: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    maxiter: Option<usize>,
    /// Run replicates on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value = "intra")]
    metric: Metric,
    #[arg(long, value_enum, default_value = "less")]
    tail: Tail,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// artset1 or artset2.
    name: String,
    #[arg(long, default_value_t = DEFAULT_DATA_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Flag values layered over config-file values.
struct Layered {
    file: BTreeMap<String, String>,
}

impl Layered {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| HarnessError::usage(format!("config key {key}: {e}")))
            })
            .transpose()
    }

    fn get_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                T::from_str(v, true)
                    .map_err(|e| HarnessError::usage(format!("config key {key}: {e}")))
            })
            .transpose()
    }

    fn switch(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag || self.get::<bool>(None, key)?.unwrap_or(false))
    }
}

struct RunPlan {
    config: ExperimentConfig,
    title: String,
    out: Option<PathBuf>,
    format: Format,
}

fn plan(args: RunArgs) -> Result<RunPlan> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Read {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let layer = Layered { file };

    let data_seed = layer.get(args.data_seed, "data-seed")?.unwrap_or(DEFAULT_DATA_SEED);
    let label = layer.get(args.label_col, "label-col")?;
    let header = !layer.switch(args.no_header, "no-header")?;
    // a source given on the command line replaces the file's
    let (dataset, csv) = if args.dataset.is_some() || args.csv.is_some() {
        (args.dataset, args.csv)
    } else {
        (layer.get(None, "dataset")?, layer.get(None, "csv")?)
    };
    let dataset = match (dataset, csv) {
        (Some(_), Some(_)) => return Err(HarnessError::usage("give either a dataset or a csv, not both")),
        (Some(name), None) => DatasetSpec::Builtin { name, data_seed },
        (None, Some(path)) => DatasetSpec::Csv { path, label, header },
        (None, None) => return Err(HarnessError::usage("no dataset given (use --dataset or --csv)")),
    };

    let kind = layer.get_enum(args.algo, "algo")?.unwrap_or(AlgorithmKind::Hkak);
    let preset = layer.get_enum(args.preset, "preset")?.unwrap_or_default();
    let mut algorithm = Algorithm::preset(kind, preset);
    ParamOverrides {
        population: layer.get(args.n, "n")?,
        measurements: layer.get(args.n_xi, "n-xi")?,
        alpha: layer.get(args.alpha, "alpha")?,
        weight: layer.get(args.w, "w")?,
        epsilon: layer.get(args.epsilon, "epsilon")?,
        max_iter: layer.get(args.maxiter, "maxiter")?,
    }
    .apply(&mut algorithm)?;

    let title = match &dataset {
        DatasetSpec::Builtin { name, .. } => name.clone(),
        DatasetSpec::Csv { path, .. } => path.display().to_string(),
    };
    let config = ExperimentConfig {
        dataset,
        algorithm,
        k: layer.get(args.k, "k")?,
        replicates: layer.get(args.replicates, "replicates")?.unwrap_or(DEFAULT_REPLICATES),
        base_seed: layer.get(args.seed, "seed")?.unwrap_or(0),
        parallel: layer.switch(args.parallel, "parallel")?,
    };
    config.validate()?;
    let kind_name = kind.to_possible_value().map_or("?".into(), |v| v.get_name().to_owned());
    Ok(RunPlan {
        config,
        title: format!("{title} / {kind_name}"),
        out: layer.get(args.out, "out")?,
        format: layer.get_enum(args.format, "format")?.unwrap_or_default(),
    })
}

fn run(args: RunArgs, stdout: &mut dyn Write) -> Result<()> {
    let plan = plan(args)?;
    let records = run_experiment(&plan.config)?;
    let summary = summarize(&records)?;
    match &plan.out {
        Some(path) => {
            emit_results(&records, &summary, &plan.title, plan.format, Some(path))?;
            write_stdout(stdout, summary_markdown(&plan.title, &summary).as_bytes())
        }
        None => write_stdout(
            stdout,
            &render_results(&records, &summary, &plan.title, plan.format),
        ),
    }
}

fn compare_files(args: CompareArgs, stdout: &mut dyn Write) -> Result<()> {
    let a = read_records_file(&args.a)?;
    let b = read_records_file(&args.b)?;
    let p = compare(&a, &b, args.metric, args.tail)?;
    let mean = |r: &[_]| {
        summarize(r)
            .ok()
            .and_then(|s| s.get(args.metric).map(|x| x.mean))
            .map_or_else(|| "n/a".to_owned(), |m| format!("{m:.4}"))
    };
    let tail = args.tail.to_possible_value().map_or("?".into(), |v| v.get_name().to_owned());
    let line = format!(
        "{}: mean {} vs {} (n = {} vs {}), rank-sum {tail} p = {p:.4e}\n",
        args.metric.label(),
        mean(&a),
        mean(&b),
        a.len(),
        b.len(),
    );
    write_stdout(stdout, line.as_bytes())
}

fn generate(args: GenArgs, stdout: &mut dyn Write) -> Result<()> {
    if !matches!(args.name.to_ascii_lowercase().as_str(), "artset1" | "artset2") {
        return Err(HarnessError::usage(format!(
            "gen knows artset1 and artset2, not '{}'",
            args.name
        )));
    }
    let data = load_builtin(&args.name, args.seed)?;
    let mut buf = Vec::new();
    write_dataset_csv(&data, &mut buf).expect("writing to memory cannot fail");
    match &args.out {
        Some(path) => write_file(path, &buf),
        None => write_stdout(stdout, &buf),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| HarnessError::Write {
        path: path.to_owned(),
        source,
    })
}

fn write_stdout(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|source| HarnessError::Write {
            path: "<stdout>".into(),
            source,
        })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status: 0 success, 1 usage, 2 data, 3 runtime.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(shown.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(shown.as_bytes());
                    1
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(*args, stdout),
        Command::Compare(args) => compare_files(args, stdout),
        Command::Gen(args) => generate(args, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

//! Command-line front end: `interpolate`, `table`, `optimize`, `plot`.
//!
//! Every command renders its whole output in memory, then writes it to
//! `--output` atomically (or to stdout). Numbers use 17 significant digits.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{curve_for, run_table, table_csv, table_markdown, DEFAULT_DENSE};
use crate::error::{Error, Result};
use crate::grid::{place_on_circle, read_samples};
use crate::optimize::{optimize_phantom, PhantomObjective, SearchSpec, DEFAULT_MAX_SWEEPS, DEFAULT_RESOLUTION};
use crate::output::{fmt_num, sig17, sig17_vec, to_json, write_atomic};
use crate::phantom::{fill_phantom, DerivativeSource, PhantomConfig};
use crate::source::{sample_source, FunctionId, SourceFunction};
use crate::spline::TrigSpline;

#[derive(Debug, Parser)]
#[command(name = "trigspline", version, about = "Trigonometric splines with phantom-node seam smoothing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a spline from samples and write node residuals and evaluations.
    Interpolate(RunArgs),
    /// Error-reduction table for k = 1, 2 and p = 0, 1, 2.
    Table(RunArgs),
    /// Search phantom values minimising the relative error.
    Optimize(RunArgs),
    /// Spline, reference and error curves around the circle.
    Plot(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceKind {
    Exact,
    DividedDifference,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Builtin reference function: ramp, ramp_integer, sine75, exp02.
    #[arg(long)]
    pub function: Option<String>,
    /// CSV file with one sample per line ('#' lines are comments).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of samples taken from --function.
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    /// Phantom pairs; 2k phantom nodes are added.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Matched derivatives of the phantom function (0, 1 or 2).
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Spline order.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = SourceKind::DividedDifference)]
    pub derivative_source: SourceKind,
    /// Comma-separated explicit phantom values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phantom_values: Option<Vec<f64>>,
    /// JSON file holding {"phantom_values": [...]}.
    #[arg(long)]
    pub phantom_file: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_DENSE)]
    pub dense: usize,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Interpolate,
    Table,
    Optimize,
    Plot,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Interpolate => "interpolate",
            CommandKind::Table => "table",
            CommandKind::Optimize => "optimize",
            CommandKind::Plot => "plot",
        }
    }
}

/// Where the samples come from.
#[derive(Clone, Debug)]
pub enum Input {
    Function(FunctionId),
    Csv(PathBuf),
}

/// A validated command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Input,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub r: usize,
    pub derivative_source: SourceKind,
    pub phantom_values: Option<Vec<f64>>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub dense: usize,
    pub resolution: f64,
    pub max_sweeps: usize,
}

#[derive(serde::Deserialize)]
struct PhantomFile {
    phantom_values: Vec<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (command, args) = match cli.command {
            Command::Interpolate(a) => (CommandKind::Interpolate, a),
            Command::Table(a) => (CommandKind::Table, a),
            Command::Optimize(a) => (CommandKind::Optimize, a),
            Command::Plot(a) => (CommandKind::Plot, a),
        };
        let input = match (args.function, args.input) {
            (Some(f), None) => Input::Function(f.parse()?),
            (None, Some(p)) => Input::Csv(p),
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either --function or --input, not both".into()))
            }
            (None, None) => return Err(Error::Config("one of --function or --input is required".into())),
        };
        if command != CommandKind::Interpolate && matches!(input, Input::Csv(_)) {
            return Err(Error::Config(format!(
                "`{}` needs --function: the error is measured against a reference",
                command.name()
            )));
        }
        let phantom_values = match (args.phantom_values, args.phantom_file) {
            (Some(v), None) => Some(v),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let parsed: PhantomFile =
                    serde_json::from_str(&text).map_err(|source| Error::Json { path, source })?;
                Some(parsed.phantom_values)
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either --phantom-values or --phantom-file".into()))
            }
            (None, None) => None,
        };
        if args.derivative_source == SourceKind::Explicit && phantom_values.is_none() {
            return Err(Error::Config(
                "--derivative-source explicit needs --phantom-values or --phantom-file".into(),
            ));
        }
        if phantom_values.is_some() && args.derivative_source != SourceKind::Explicit {
            return Err(Error::Config(
                "phantom values given; add --derivative-source explicit".into(),
            ));
        }
        if args.derivative_source == SourceKind::Exact && matches!(input, Input::Csv(_)) {
            return Err(Error::Config("--derivative-source exact needs --function".into()));
        }
        if args.p > 2 {
            return Err(Error::MatchOrder(args.p));
        }
        let format = args.format.unwrap_or(match command {
            CommandKind::Table => Format::Markdown,
            CommandKind::Optimize => Format::Json,
            _ => Format::Csv,
        });
        let allowed = match command {
            CommandKind::Interpolate => &[Format::Csv, Format::Json][..],
            CommandKind::Table => &[Format::Markdown, Format::Csv, Format::Json][..],
            CommandKind::Optimize => &[Format::Json][..],
            CommandKind::Plot => &[Format::Csv][..],
        };
        if !allowed.contains(&format) {
            return Err(Error::Config(format!(
                "--format {format:?} is not available for `{}`",
                command.name()
            )));
        }
        if command == CommandKind::Optimize && args.k == 0 {
            return Err(Error::Config("`optimize` needs --k >= 1".into()));
        }
        Ok(Self {
            command,
            input,
            n: args.n,
            k: args.k,
            p: args.p,
            r: args.r,
            derivative_source: args.derivative_source,
            phantom_values,
            output: args.output,
            format,
            dense: args.dense,
            resolution: args.resolution,
            max_sweeps: args.max_sweeps,
        })
    }

    fn source(&self, n: usize) -> Result<Option<SourceFunction>> {
        match &self.input {
            Input::Function(id) => Ok(Some(SourceFunction::builtin(id, n)?)),
            Input::Csv(_) => Ok(None),
        }
    }

    fn reference(&self) -> Result<SourceFunction> {
        self.source(self.n)?
            .ok_or(Error::MissingSource("this command"))
    }

    fn phantom_config(&self) -> PhantomConfig {
        let source = match self.derivative_source {
            SourceKind::Exact => DerivativeSource::Exact,
            SourceKind::DividedDifference => DerivativeSource::DividedDifference,
            SourceKind::Explicit => DerivativeSource::ExplicitValues(self.phantom_values.clone().unwrap_or_default()),
        };
        PhantomConfig::new(self.k, self.p, source)
    }
}

/// Renders the command output.
pub fn render(config: &RunConfig) -> Result<String> {
    match config.command {
        CommandKind::Interpolate => interpolate(config),
        CommandKind::Table => {
            let f = config.reference()?;
            let reports = run_table(&f, config.n, &[1, 2], config.r, config.dense)?;
            Ok(match config.format {
                Format::Markdown => table_markdown(&reports),
                Format::Csv => table_csv(&reports),
                Format::Json => to_json(&reports),
            })
        }
        CommandKind::Optimize => {
            let f = config.reference()?;
            let objective = PhantomObjective::new(&f, config.n, config.k, config.r, config.dense)?;
            let mut spec = SearchSpec::new(objective.hermite_values(config.p)?, objective.data_range())
                .with_resolution(config.resolution);
            spec.max_sweeps = config.max_sweeps;
            Ok(to_json(&optimize_phantom(&objective, &spec)?))
        }
        CommandKind::Plot => {
            let f = config.reference()?;
            let curve = curve_for(&f, config.n, &config.phantom_config(), config.r, config.dense)?;
            Ok(curve.to_csv())
        }
    }
}

#[derive(Serialize)]
struct NodeRow {
    #[serde(serialize_with = "sig17")]
    t: f64,
    #[serde(serialize_with = "sig17")]
    value: f64,
    #[serde(serialize_with = "sig17")]
    spline: f64,
    #[serde(serialize_with = "sig17")]
    residual: f64,
    phantom: bool,
}

#[derive(Serialize)]
struct CurvePoint {
    #[serde(serialize_with = "sig17")]
    t: f64,
    #[serde(serialize_with = "sig17")]
    spline: f64,
}

#[derive(Serialize)]
struct InterpolateReport {
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    #[serde(rename = "M")]
    m: usize,
    r: usize,
    truncation_depth: usize,
    #[serde(serialize_with = "sig17_vec")]
    phantom_values: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    max_residual: f64,
    nodes: Vec<NodeRow>,
    curve: Vec<CurvePoint>,
}

fn interpolate(config: &RunConfig) -> Result<String> {
    let (original, source) = match &config.input {
        Input::Csv(path) => (read_samples(path)?, None),
        Input::Function(_) => {
            let f = config.reference()?;
            (sample_source(&f, config.n)?, Some(f))
        }
    };
    let placed = place_on_circle(&original, config.k)?;
    let samples = fill_phantom(placed, &config.phantom_config(), source.as_ref())?;
    let spline = TrigSpline::new(&samples, config.r)?;
    let grid = *samples.grid();
    let nodes: Vec<NodeRow> = samples
        .values()
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let t = grid.node(i);
            let s = spline.eval(t);
            NodeRow {
                t,
                value,
                spline: s,
                residual: s - value,
                phantom: i >= samples.original_count(),
            }
        })
        .collect();
    let curve: Vec<CurvePoint> = (0..config.dense)
        .map(|i| {
            let t = TAU * i as f64 / config.dense as f64;
            CurvePoint { t, spline: spline.eval(t) }
        })
        .collect();
    let max_residual = nodes.iter().fold(0.0_f64, |m, n| m.max(n.residual.abs()));
    match config.format {
        Format::Json => Ok(to_json(&InterpolateReport {
            n: samples.original_count(),
            k: samples.phantom_pairs(),
            m: grid.node_count(),
            r: config.r,
            truncation_depth: spline.truncation_depth(),
            phantom_values: samples.phantom().to_vec(),
            max_residual,
            nodes,
            curve,
        })),
        _ => {
            let mut out = String::from("kind,index,t,value,spline,residual\n");
            for (i, row) in nodes.iter().enumerate() {
                let kind = if row.phantom { "phantom" } else { "data" };
                let _ = writeln!(
                    out,
                    "{kind},{i},{},{},{},{}",
                    fmt_num(row.t),
                    fmt_num(row.value),
                    fmt_num(row.spline),
                    fmt_num(row.residual)
                );
            }
            for (i, p) in curve.iter().enumerate() {
                let _ = writeln!(out, "dense,{i},{},,{},", fmt_num(p.t), fmt_num(p.spline));
            }
            Ok(out)
        }
    }
}

/// Renders and writes the output of one command.
pub fn run(config: &RunConfig) -> Result<()> {
    let text = render(config)?;
    match &config.output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_cli(cli).and_then(|c| run(&c)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut full = vec!["trigspline"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).expect("clap parse"))
    }

    #[test]
    fn requires_exactly_one_input() {
        assert!(config(&["interpolate"]).is_err());
        assert!(config(&["interpolate", "--function", "ramp", "--input", "x.csv"]).is_err());
        assert!(config(&["interpolate", "--function", "ramp"]).is_ok());
    }

    #[test]
    fn reference_commands_reject_csv() {
        for cmd in ["table", "optimize", "plot"] {
            let err = config(&[cmd, "--input", "x.csv"]).unwrap_err();
            assert!(err.to_string().contains("--function"), "{err}");
        }
    }

    #[test]
    fn explicit_values_need_matching_flag() {
        assert!(config(&["interpolate", "--function", "ramp", "--derivative-source", "explicit"]).is_err());
        assert!(config(&["interpolate", "--function", "ramp", "--phantom-values", "1,2"]).is_err());
        let c = config(&[
            "interpolate", "--function", "ramp", "--derivative-source", "explicit", "--phantom-values", "1,-2",
        ])
        .unwrap();
        assert_eq!(c.phantom_values, Some(vec![1.0, -2.0]));
    }

    #[test]
    fn unknown_function_named() {
        let err = config(&["table", "--function", "cosine"]).unwrap_err();
        assert!(err.to_string().contains("cosine"));
    }

    #[test]
    fn format_restrictions() {
        assert!(config(&["plot", "--function", "ramp", "--format", "json"]).is_err());
        assert_eq!(config(&["table", "--function", "ramp"]).unwrap().format, Format::Markdown);
        assert_eq!(config(&["optimize", "--function", "ramp"]).unwrap().format, Format::Json);
    }

    #[test]
    fn interpolate_explicit_values_appear_verbatim() {
        let c = config(&[
            "interpolate", "--function", "ramp_integer", "--derivative-source", "explicit",
            "--phantom-values", "6.5,3.25", "--format", "json", "--dense", "16",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&c).unwrap()).unwrap();
        assert_eq!(v["M"], 11);
        assert_eq!(v["phantom_values"][0], 6.5);
        assert_eq!(v["phantom_values"][1], 3.25);
        assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
    }

    #[test]
    fn table_has_published_baseline_scale() {
        let c = config(&["table", "--function", "sine75", "--n", "9", "--r", "3", "--dense", "501"]).unwrap();
        let md = render(&c).unwrap();
        let row = md.lines().find(|l| l.starts_with("| 9 | ")).unwrap();
        let baseline: f64 = row.split('|').nth(2).unwrap().trim().parse().unwrap();
        assert!(baseline > 0.02 && baseline < 0.09, "{baseline}");
    }
}

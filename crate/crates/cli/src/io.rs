//! Reading bodies and measures, writing reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use concavlab::bodies::Body;
use concavlab::geometry::io::{MeasureJson, PolytopeJson};
use concavlab::{DirectionalMeasure, Error, Polytope};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Solver(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::FacetVanished { .. } => CliError::Solver(e.to_string()),
            Error::NoViolationFound(_) => CliError::Failed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// serde_json errors already carry line and column; prefix the file.
fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!("{}: {e}", path.display()))
    })
}

pub fn read_measure(path: &Path) -> CliResult<DirectionalMeasure> {
    let j: MeasureJson = parse(path, &read_text(path)?)?;
    Ok(DirectionalMeasure::try_from(&j)?)
}

/// A tagged body (`{"type": "box", ...}`) or a bare polytope
/// (`{"dim": 3, "vertices": [...]}`).
pub fn read_body(path: &Path) -> CliResult<Body> {
    let text = read_text(path)?;
    let v: Value = parse(path, &text)?;
    if v.get("type").is_some() {
        parse(path, &text)
    } else {
        let j: PolytopeJson = parse(path, &text)?;
        Ok(Body::Polytope(Polytope::try_from(&j)?))
    }
}

/// `box:1,2,3`-style descriptor, or `@path` to a JSON body.
pub fn body_arg(s: &str) -> CliResult<Body> {
    match s.strip_prefix('@') {
        Some(p) => read_body(Path::new(p)),
        None => Ok(s.parse()?),
    }
}

pub fn polytope_of(body: Body) -> CliResult<Polytope> {
    match body {
        Body::Polytope(p) => Ok(p),
        Body::Box(b) => Ok(b.to_polytope()),
        other => Err(CliError::Input(format!("expected a polytope, got {}", other.kind()))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// A command's result: the machine report, an optional table, and a short
/// human summary.
pub struct Output {
    pub summary: String,
    pub json: Value,
    pub table: Option<Table>,
    pub default_format: Format,
    pub exit: u8,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new<T: Serialize>(summary: String, report: &T) -> CliResult<Self> {
        Ok(Self {
            summary,
            json: to_value(report)?,
            table: None,
            default_format: Format::Json,
            exit: 0,
        })
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

pub fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

fn render(out: &Output, format: Format) -> CliResult<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.json)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Io(e.to_string())),
        Format::Csv => {
            let t = out
                .table
                .as_ref()
                .ok_or_else(|| CliError::Input("this report has no CSV form; use --format json".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&t.header).map_err(io)?;
            for r in &t.rows {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// With `--out` the report goes to the file and the summary to stdout;
/// otherwise the report owns stdout and the summary moves to stderr.
pub fn emit(out: &Output, format: Option<Format>, path: Option<&PathBuf>) -> CliResult<()> {
    let text = render(out, format.unwrap_or(out.default_format))?;
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            println!("{}", out.summary);
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
            eprintln!("{}", out.summary);
        }
    }
    Ok(())
}

/// Shortest round-trip digits, in exponent form away from `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

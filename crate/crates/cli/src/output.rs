use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::args::{Format, RunConfig};
use crate::CliError;

pub const OUT_DIR_ENV: &str = "RADIAL_RKHS_OUT_DIR";

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// JSON number carrying exactly the digits of [`format_real`]; non-finite values become `null`.
pub fn json_real(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format_real(x)).expect("formatted float is valid JSON"))
    } else {
        Value::Null
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Real(x) => format_real(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(x) => json_real(*x),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a command produces: a table plus metadata for the JSON envelope.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub table: Table,
    /// Identifiers and closed forms of the formulas the command evaluated.
    pub formulas: Vec<(&'static str, &'static str)>,
    pub summary: Vec<(&'static str, Cell)>,
    pub note: Option<&'static str>,
}

impl Artifact {
    pub fn new(table: Table, formulas: Vec<(&'static str, &'static str)>) -> Self {
        Artifact {
            table,
            formulas,
            summary: Vec::new(),
            note: None,
        }
    }
}

pub fn render(artifact: &Artifact, config: &RunConfig) -> Result<String, CliError> {
    match config.format {
        Format::Csv => render_csv(&artifact.table),
        Format::Json => Ok(render_json(artifact, config)),
    }
}

fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    writer.write_record(&table.columns).map_err(|e| CliError::Output(e.to_string()))?;
    for row in &table.rows {
        writer
            .write_record(row.iter().map(Cell::csv))
            .map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn render_json(artifact: &Artifact, config: &RunConfig) -> String {
    let spec = &config.spec;
    let formulas: Map<String, Value> = artifact
        .formulas
        .iter()
        .map(|(id, form)| ((*id).to_owned(), json!(form)))
        .collect();
    let summary: Map<String, Value> = artifact
        .summary
        .iter()
        .map(|(k, v)| ((*k).to_owned(), v.json()))
        .collect();
    let rows: Vec<Value> = artifact
        .table
        .rows
        .iter()
        .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
        .collect();

    let mut envelope = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": config.command,
        "dim": json_real(config.dim.get()),
        "seed": config.seed,
        "sign_convention": config.convention.as_str(),
        "formulas": formulas,
        "quadrature": {
            "rel_tol": json_real(spec.rel_tol),
            "abs_tol": json_real(spec.abs_tol),
            "max_subdivisions": spec.max_subdivisions,
            "base_nodes": spec.base_nodes,
            "split_at_kinks": spec.split_at_kinks,
        },
        "columns": artifact.table.columns,
        "rows": rows,
        "summary": summary,
    });
    if let Some(note) = artifact.note {
        envelope["note"] = json!(note);
    }
    let mut text = serde_json::to_string_pretty(&envelope).expect("json values serialize");
    text.push('\n');
    text
}

/// Where output goes: the `--output` path (relative to the env directory when
/// set), a default file name inside the env directory, or stdout.
pub fn destination(config: &RunConfig, env_dir: Option<PathBuf>) -> Option<PathBuf> {
    match (&config.output, env_dir) {
        (Some(path), Some(dir)) if path.is_relative() => Some(dir.join(path)),
        (Some(path), _) => Some(path.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{}", config.command, config.format.extension()))),
        (None, None) => None,
    }
}

pub fn emit(text: &str, config: &RunConfig) -> Result<(), CliError> {
    let env_dir = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    match destination(config, env_dir) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| CliError::Output(format!("{}: {e}", parent.display())))?;
            }
            fs::write(&path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

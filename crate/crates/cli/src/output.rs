//! CSV and JSON records written by `qdot`.
//!
//! A document is one or more tables. Each table has a record kind with a
//! fixed column order, `# key: value` metadata, and rows. In CSV the tables
//! are separated by a blank line and the metadata precedes the header; in
//! JSON the document is an array of table objects. Reals are rounded to 12
//! significant digits in both, so the two carry the same numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_err(line: usize, message: impl Into<String>) -> OutputError {
    OutputError::Format {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Int,
    Real,
    Text,
    Bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    Eigenvalue,
    WavefunctionSample,
    ReportRow,
    HeunRoot,
    YCoefficient,
    CutoffScan,
}

use ColumnType::*;

impl RecordKind {
    pub const ALL: [RecordKind; 6] = [
        RecordKind::Eigenvalue,
        RecordKind::WavefunctionSample,
        RecordKind::ReportRow,
        RecordKind::HeunRoot,
        RecordKind::YCoefficient,
        RecordKind::CutoffScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Eigenvalue => "eigenvalue",
            RecordKind::WavefunctionSample => "wavefunction-sample",
            RecordKind::ReportRow => "report-row",
            RecordKind::HeunRoot => "heun-root",
            RecordKind::YCoefficient => "y-coefficient",
            RecordKind::CutoffScan => "cutoff-scan",
        }
    }

    /// Column names and types, in output order.
    pub fn columns(self) -> &'static [(&'static str, ColumnType)] {
        match self {
            RecordKind::Eigenvalue => &[
                ("potential", Text),
                ("omega", Real),
                ("l", Int),
                ("index", Int),
                ("nodes", Int),
                ("eta", Real),
            ],
            RecordKind::WavefunctionSample => &[("state", Int), ("r", Real), ("u", Real)],
            RecordKind::ReportRow => &[
                ("report", Text),
                ("key", Text),
                ("quantity", Text),
                ("expected", Real),
                ("computed", Real),
                ("rel_error", Real),
                ("tolerance", Real),
                ("pass", Bool),
                ("annotation", Text),
            ],
            RecordKind::HeunRoot => &[
                ("n", Int),
                ("l", Int),
                ("root_index", Int),
                ("t", Real),
                ("omega", Real),
                ("eta", Real),
                ("exponent", Real),
            ],
            RecordKind::YCoefficient => &[
                ("n", Int),
                ("l", Int),
                ("root_index", Int),
                ("power", Int),
                ("coefficient", Real),
            ],
            RecordKind::CutoffScan => &[("r_min", Real), ("coulomb", Real), ("log", Real)],
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RecordKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RecordKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown record kind `{s}`"))
    }
}

/// Round to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

fn format_real(v: f64) -> String {
    let r = round12(v);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    /// Blank cell / JSON null.
    Missing,
}

impl Value {
    /// A real cell; non-finite values become [`Value::Missing`].
    pub fn real(v: f64) -> Self {
        if v.is_finite() {
            Value::Real(round12(v))
        } else {
            Value::Missing
        }
    }

    pub fn int(v: impl TryInto<i64>) -> Self {
        v.try_into().map_or(Value::Missing, Value::Int)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Real(r) => Some(*r),
            _ => None,
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Real(r) => format_real(*r),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Missing => String::new(),
        }
    }

    fn from_cell(cell: &str, ty: ColumnType) -> Result<Self, String> {
        if cell.is_empty() && ty != Text {
            return Ok(Value::Missing);
        }
        match ty {
            Int => cell
                .parse()
                .map(Value::Int)
                .map_err(|_| format!("`{cell}` is not an integer")),
            Real => match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Value::Real(v)),
                _ => Err(format!("`{cell}` is not a finite number")),
            },
            Bool => cell
                .parse()
                .map(Value::Bool)
                .map_err(|_| format!("`{cell}` is not true/false")),
            Text => Ok(Value::Text(cell.to_string())),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Int(i) => (*i).into(),
            Value::Real(r) => serde_json::Number::from_f64(*r).map_or(serde_json::Value::Null, Into::into),
            Value::Text(s) => s.clone().into(),
            Value::Bool(b) => (*b).into(),
            Value::Missing => serde_json::Value::Null,
        }
    }

    fn from_json(v: &serde_json::Value, ty: ColumnType) -> Result<Self, String> {
        use serde_json::Value as J;
        match (v, ty) {
            (J::Null, _) => Ok(Value::Missing),
            (J::Number(n), Int) => n
                .as_i64()
                .map(Value::Int)
                .ok_or_else(|| format!("{n} is not an integer")),
            (J::Number(n), Real) => n
                .as_f64()
                .map(Value::Real)
                .ok_or_else(|| format!("{n} is not a number")),
            (J::String(s), Text) => Ok(Value::Text(s.clone())),
            (J::Bool(b), Bool) => Ok(Value::Bool(*b)),
            (other, ty) => Err(format!("{other} does not fit a {ty:?} column")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: RecordKind,
    /// Written as `# key: value` lines; keys are unique.
    pub metadata: BTreeMap<String, String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(kind: RecordKind) -> Self {
        Self {
            kind,
            metadata: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.kind.columns().len(), "row width for {}", self.kind);
        self.rows.push(row);
    }

    /// Values of column `name` as reals (missing cells are skipped).
    pub fn column(&self, name: &str) -> Vec<f64> {
        let Some(idx) = self.kind.columns().iter().position(|(c, _)| *c == name) else {
            return Vec::new();
        };
        self.rows.iter().filter_map(|r| r[idx].as_f64()).collect()
    }

    fn write_csv(&self, out: &mut String) -> Result<(), OutputError> {
        out.push_str(&format!("# kind: {}\n", self.kind));
        for (k, v) in &self.metadata {
            // metadata values are single-line by construction
            out.push_str(&format!("# {k}: {}\n", v.replace('\n', " ")));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.kind.columns().iter().map(|(c, _)| *c))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::to_cell))?;
        }
        let bytes = w.into_inner().map_err(|e| format_err(0, e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is UTF-8"));
        Ok(())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.name(),
            "metadata": self.metadata,
            "columns": self.kind.columns().iter().map(|(c, _)| *c).collect::<Vec<_>>(),
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(Value::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub fn to_csv(tables: &[Table]) -> Result<String, OutputError> {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        t.write_csv(&mut out)?;
    }
    Ok(out)
}

pub fn to_json(tables: &[Table]) -> Result<String, OutputError> {
    let doc: Vec<serde_json::Value> = tables.iter().map(Table::to_json).collect();
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Parse a document written by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<Table>, OutputError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut tables = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        if lines[i].trim().is_empty() {
            i += 1;
            continue;
        }
        let start = i;
        while i < lines.len() && !lines[i].trim().is_empty() {
            i += 1;
        }
        tables.push(parse_block(&lines[start..i], start + 1)?);
    }
    Ok(tables)
}

/// One table; `first_line` is the 1-based line number of `lines[0]`.
fn parse_block(lines: &[&str], first_line: usize) -> Result<Table, OutputError> {
    let mut metadata = BTreeMap::new();
    let mut kind = None;
    let mut body = 0;
    for (j, line) in lines.iter().enumerate() {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        body = j + 1;
        let (k, v) = rest
            .split_once(':')
            .ok_or_else(|| format_err(first_line + j, "metadata line needs `# key: value`"))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "kind" {
            kind = Some(RecordKind::from_str(v).map_err(|m| format_err(first_line + j, m))?);
        } else if metadata.insert(k.to_string(), v.to_string()).is_some() {
            return Err(format_err(first_line + j, format!("duplicate metadata key `{k}`")));
        }
    }
    let kind = kind.ok_or_else(|| format_err(first_line, "table has no `# kind:` line"))?;
    let columns = kind.columns();
    let header_line = first_line + body;
    let csv_text = lines[body..].join("\n");
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(csv_text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| format_err(header_line, e.to_string()))?
        .clone();
    if header.len() != columns.len() || header.iter().zip(columns).any(|(h, (c, _))| h != *c) {
        return Err(format_err(
            header_line,
            format!("header does not match the {kind} columns"),
        ));
    }
    let mut table = Table {
        kind,
        metadata,
        rows: Vec::new(),
    };
    for (r, record) in reader.records().enumerate() {
        let line = header_line + 1 + r;
        let record = record.map_err(|e| format_err(line, e.to_string()))?;
        let row = record
            .iter()
            .zip(columns)
            .map(|(cell, (_, ty))| Value::from_cell(cell, *ty).map_err(|m| format_err(line, m)))
            .collect::<Result<Vec<_>, _>>()?;
        table.rows.push(row);
    }
    Ok(table)
}

/// Parse a document written by [`to_json`].
pub fn parse_json(text: &str) -> Result<Vec<Table>, OutputError> {
    #[derive(Deserialize)]
    struct Raw {
        kind: String,
        metadata: BTreeMap<String, String>,
        columns: Vec<String>,
        rows: Vec<Vec<serde_json::Value>>,
    }
    let raw: Vec<Raw> = serde_json::from_str(text)?;
    raw.into_iter()
        .enumerate()
        .map(|(t, raw)| {
            let err = |m: String| format_err(t + 1, m);
            let kind = RecordKind::from_str(&raw.kind).map_err(err)?;
            let columns = kind.columns();
            if raw.columns.len() != columns.len() || raw.columns.iter().zip(columns).any(|(a, (b, _))| a != b) {
                return Err(err(format!("columns do not match the {kind} columns")));
            }
            let rows = raw
                .rows
                .iter()
                .map(|row| {
                    if row.len() != columns.len() {
                        return Err(err(format!("row has {} cells, expected {}", row.len(), columns.len())));
                    }
                    row.iter()
                        .zip(columns)
                        .map(|(v, (_, ty))| Value::from_json(v, *ty).map_err(err))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            Ok(Table {
                kind,
                metadata: raw.metadata,
                rows,
            })
        })
        .collect()
}

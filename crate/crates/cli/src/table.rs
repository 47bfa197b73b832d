//! Tabular results: CSV with `#` metadata lines, and a JSON mirror.

use std::fmt::Write as _;

use casimir_friction::units::Dims;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            Cell::Text(_) => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Shortest round-trip representation; exponent form outside `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// One named output column of a row.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub cell: Cell,
    pub dims: Option<Dims>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row {
    pub columns: Vec<Column>,
}

impl Row {
    pub fn num(&mut self, name: impl Into<String>, value: f64, dims: Option<Dims>) -> &mut Self {
        self.columns.push(Column { name: name.into(), cell: Cell::Num(value), dims });
        self
    }

    pub fn int(&mut self, name: impl Into<String>, value: u64) -> &mut Self {
        self.columns.push(Column { name: name.into(), cell: Cell::Int(value), dims: None });
        self
    }

    pub fn text(&mut self, name: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.columns.push(Column { name: name.into(), cell: Cell::Text(value.into()), dims: None });
        self
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.columns.iter().find(|c| c.name == name).map(|c| &c.cell)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).and_then(Cell::as_f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub dims: Vec<Option<Dims>>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// All rows must share the column layout of the first.
    pub fn from_rows(rows: Vec<Row>) -> CliResult<Table> {
        let mut table = Table::default();
        if let Some(first) = rows.first() {
            table.columns = first.columns.iter().map(|c| c.name.clone()).collect();
            table.dims = first.columns.iter().map(|c| c.dims).collect();
        }
        for row in rows {
            let names: Vec<&str> = row.columns.iter().map(|c| c.name.as_str()).collect();
            if names != table.columns.iter().map(String::as_str).collect::<Vec<_>>() {
                return Err(CliError::Numeric("rows with differing column sets".into()));
            }
            table.rows.push(row.columns.into_iter().map(|c| c.cell).collect());
        }
        Ok(table)
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let dims: Vec<String> = self
            .columns
            .iter()
            .zip(&self.dims)
            .filter_map(|(c, d)| d.map(|d| format!("{c}={d}")))
            .collect();
        if !dims.is_empty() {
            let _ = writeln!(out, "# dims: {}", dims.join("; "));
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), json!(v));
        }
        let dims: Map<String, Value> = self
            .columns
            .iter()
            .zip(&self.dims)
            .filter_map(|(c, d)| d.map(|d| (c.clone(), json!(d.to_string()))))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "metadata": meta,
            "columns": self.columns,
            "dims": dims,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
        s.push('\n');
        s
    }
}

//! Output records: CSV by default, JSON lines on request.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    U(u64),
    /// Arbitrary-precision integer or rational, kept as text.
    Exact(String),
    S(String),
    B(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::U(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::U(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::U(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

pub fn exact(v: impl std::fmt::Display) -> Cell {
    Cell::Exact(v.to_string())
}

/// Shortest representation that round-trips, so at most 17 significant
/// digits; exponent form outside [1e-5, 1e16).
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        let raw = match self {
            Cell::F(v) => fmt_f64(*v),
            Cell::U(v) => v.to_string(),
            Cell::Exact(s) | Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
        };
        if raw.contains([',', '"', '\n']) {
            format!("\"{}\"", raw.replace('"', "\"\""))
        } else {
            raw
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::U(v) => Value::from(*v),
            Cell::Exact(s) => match s.parse::<u64>() {
                Ok(v) => Value::from(v),
                Err(_) => Value::from(s.clone()),
            },
            Cell::S(s) => Value::from(s.clone()),
            Cell::B(b) => Value::from(*b),
        }
    }
}

/// One command's result: a table of rows plus the parameters and numerical
/// settings that produced it.
#[derive(Debug, Clone)]
pub struct Record {
    pub command: String,
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn param(mut self, name: &'static str, v: impl Into<Cell>) -> Self {
        self.params.push((name, v.into()));
        self
    }

    pub fn meta(mut self, name: &'static str, v: impl Into<Cell>) -> Self {
        self.meta.push((name, v.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn with_row(mut self, cells: Vec<Cell>) -> Self {
        self.row(cells);
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                let object = |pairs: &[(&'static str, Cell)]| {
                    Value::Object(
                        pairs
                            .iter()
                            .map(|(k, v)| (k.to_string(), v.json()))
                            .collect::<Map<_, _>>(),
                    )
                };
                let params = object(&self.params);
                let meta = object(&self.meta);
                for row in &self.rows {
                    let result: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), v.json()))
                        .collect();
                    let mut rec = Map::new();
                    rec.insert("command".into(), Value::from(self.command.clone()));
                    rec.insert("params".into(), params.clone());
                    rec.insert("result".into(), Value::Object(result));
                    rec.insert("meta".into(), meta.clone());
                    let _ = writeln!(out, "{}", Value::Object(rec));
                }
            }
        }
        out
    }
}

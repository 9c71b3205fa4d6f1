//! Tabular reports rendered as CSV or JSON.
//!
//! CSV puts metadata in `# key: value` comment lines ahead of the header.
//! JSON emits `{"meta": {...}, "data": [...]}` with one object per row.

use std::io::Write;

use num_complex::Complex64;
use quartic_well::Period;
use serde_json::{json, Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Str(String),
    Bool(bool),
    Period(Period),
    Complex(Complex64),
    List(Vec<Cell>),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<Period> for Cell {
    fn from(v: Period) -> Self {
        Cell::Period(v)
    }
}

/// Shortest decimal that round-trips, never more than 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:?}")
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_num(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_num(z.re), fmt_num(z.im.abs()))
}

impl Cell {
    fn to_text(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Period(p) => p.to_string(),
            Cell::Complex(z) => fmt_complex(*z),
            Cell::List(items) => items.iter().map(Cell::to_text).collect::<Vec<_>>().join(";"),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => json!(v),
            Cell::Str(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Period(p) => p
                .finite()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Complex(z) => json!({ "re": Cell::Num(z.re).to_json(), "im": Cell::Num(z.im).to_json() }),
            Cell::List(items) => Value::Array(items.iter().map(Cell::to_json).collect()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Inserts `key` and, for periods, the companion `<key>_unbounded` flag.
fn insert(map: &mut Map<String, Value>, key: &str, cell: &Cell) {
    map.insert(key.to_owned(), cell.to_json());
    if let Cell::Period(p) = cell {
        map.insert(format!("{key}_unbounded"), json!(!p.is_finite()));
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        let mut r = Report {
            columns,
            ..Report::default()
        };
        r.meta("command", command);
        r.meta("cli_version", env!("CARGO_PKG_VERSION"));
        r.meta("library_version", quartic_well::VERSION);
        r
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Cell>) {
        self.meta.push((key.to_owned(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {}", v.to_text())?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_text))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            insert(&mut meta, k, v);
        }
        let data = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    insert(&mut obj, col, cell);
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "meta": meta, "data": Value::Array(data) })
    }
}

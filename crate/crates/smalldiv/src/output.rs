//! Tabular reports rendered as CSV or JSON.
//!
//! CSV: a header row, one line per row, then `#` comment lines carrying the
//! inputs, summary values, notes and the verdict. JSON: one object with
//! `command`, `inputs`, `rows`, `summary`, `notes` and `verdict`.

use serde_json::{json, Map, Value};
use smalldiv_core::experiments::Verdict;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // non-finite reals become null
            Cell::Real(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(u64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Shortest round-trip form; exponent notation outside `[1e-5, 1e16)`.
pub fn format_real(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub inputs: Vec<(String, Cell)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    pub notes: Vec<String>,
    pub verdict: Option<Verdict>,
}

impl Table {
    pub fn new(command: &'static str, header: &[&'static str]) -> Self {
        Table {
            command,
            inputs: Vec::new(),
            header: header.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
            notes: Vec::new(),
            verdict: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.inputs.push((key.to_string(), value.into()));
        self
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.header.len(), "row width must match the header");
        self.rows.push(cells);
    }

    pub fn failed(&self) -> bool {
        self.verdict == Some(Verdict::Fail)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for (k, v) in &self.inputs {
            out.push_str(&format!("# input {k} = {}\n", v.csv()));
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k} = {}\n", v.csv()));
        }
        for n in &self.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("# verdict: {}\n", v.as_str()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let pairs = |items: &[(String, Cell)]| {
            Value::Object(items.iter().map(|(k, v)| (k.clone(), v.json())).collect::<Map<_, _>>())
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.header.iter().zip(r).map(|(h, c)| (h.to_string(), c.json())).collect()))
            .collect();
        json!({
            "command": self.command,
            "inputs": pairs(&self.inputs),
            "columns": self.header,
            "rows": rows,
            "summary": pairs(&self.summary),
            "notes": self.notes,
            "verdict": self.verdict.map(Verdict::as_str),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

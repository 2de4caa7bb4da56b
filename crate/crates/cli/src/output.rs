use clap::ValueEnum;
use serde_json::{Map, Value};
use tropicalis::semiring::fmt_extended;
use tropicalis::{Error, SemiringValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Str(String),
    Num(f64),
    Int(i64),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Num(x) => fmt_extended(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            other => Value::String(other.render()),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<SemiringValue> for Cell {
    fn from(v: SemiringValue) -> Self {
        match v {
            SemiringValue::Real(x) => Cell::Num(x),
            SemiringValue::Bit(b) => Cell::Int(b as i64),
            SemiringValue::Int(Some(n)) => Cell::Int(n),
            SemiringValue::Int(None) => Cell::Str("-inf".into()),
        }
    }
}

/// Result of one subcommand: a fixed-column table plus its text rendering.
#[derive(Debug, Default)]
pub struct Output {
    pub header: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub text: String,
    pub notes: Vec<String>,
    /// Set when a check failed; reported on stderr with exit code 1.
    pub failure: Option<String>,
}

impl Output {
    pub fn new(columns: &[&'static str]) -> Self {
        Output {
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.header {
                    out.push_str(&format!("# {k}={}\n", v.render()));
                }
                out.push_str(&self.text);
                out
            }
            Format::Csv => {
                let mut out = String::new();
                for (k, v) in &self.header {
                    out.push_str(&format!("# {k}={}\n", v.render()));
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r.iter().map(Cell::render)).expect("in-memory write");
                }
                out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
                out
            }
            Format::Jsonl => {
                let mut out = String::new();
                if !self.header.is_empty() {
                    let m: Map<String, Value> = self.header.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                    out.push_str(&Value::Object(m).to_string());
                    out.push('\n');
                }
                for r in &self.rows {
                    let m: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(k, v)| (k.to_string(), v.json()))
                        .collect();
                    out.push_str(&Value::Object(m).to_string());
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Single-line error record for the error stream.
pub fn error_record(kind: &str, message: &str, format: Format) -> String {
    let message = message.replace('\n', " ");
    match format {
        Format::Jsonl => {
            let mut m = Map::new();
            m.insert("error".into(), Value::String(kind.into()));
            m.insert("message".into(), Value::String(message));
            Value::Object(m).to_string()
        }
        _ => format!("error kind={kind} message={message}"),
    }
}

pub fn error_of(e: &Error, format: Format) -> String {
    error_record(e.kind(), &e.to_string(), format)
}

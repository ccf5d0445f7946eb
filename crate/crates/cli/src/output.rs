use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig, VERSION};

/// A CSV cell. Exact values are carried as text.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
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

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, config: &RunConfig) -> anyhow::Result<()> {
        let mut out = out;
        writeln!(out, "# jonescope {VERSION}")?;
        writeln!(out, "# config: {}", serde_json::to_string(config)?)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// Goes under `"result"`.
    pub result: Value,
    /// Further top-level fields, in order.
    pub extra: Map<String, Value>,
    pub table: Option<Table>,
    /// False when an embedded check failed.
    pub passed: bool,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Outcome { result, extra: Map::new(), table: None, passed: true }
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.extra.insert(key.to_string(), v);
        self
    }

    pub fn table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.passed = ok;
        self
    }

    pub fn to_json(&self, config: &RunConfig) -> Value {
        let mut m = Map::new();
        m.insert("result".into(), self.result.clone());
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        m.insert("passed".into(), json!(self.passed));
        m.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
        m.insert("version".into(), json!(VERSION));
        Value::Object(m)
    }

    /// Writes the main output and the optional CSV side file.
    pub fn emit(&self, config: &RunConfig) -> anyhow::Result<()> {
        if let Some(path) = &config.csv {
            let t = self.table.as_ref().with_context(|| format!("`{}` has no tabular output", config.command))?;
            let f = create(path)?;
            t.write(f, config)?;
        }
        let mut buf = Vec::new();
        match config.format {
            Format::Json => {
                serde_json::to_writer(&mut buf, &self.to_json(config))?;
                buf.push(b'\n');
            }
            Format::Csv => {
                let t = self.table.as_ref().with_context(|| format!("`{}` has no tabular output", config.command))?;
                t.write(&mut buf, config)?;
            }
        }
        match &config.output {
            Some(path) => create(path)?.write_all(&buf)?,
            None => std::io::stdout().lock().write_all(&buf)?,
        }
        Ok(())
    }
}

fn create(path: &Path) -> anyhow::Result<std::fs::File> {
    std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))
}

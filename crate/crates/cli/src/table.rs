//! Tabular output: a `#` metadata block, a header with units in the column
//! names, then rows. Missing values (masked cells) are written empty in CSV
//! and as `null` in JSON.

use crate::config::Format;
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(&'static str),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&'static str> for Cell {
    fn from(v: &'static str) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "{}", self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                match *c {
                    Cell::Num(v) if v.is_finite() => line.push_str(&format!("{v:e}")),
                    Cell::Num(_) => {}
                    Cell::Int(v) => line.push_str(&v.to_string()),
                    Cell::Text(s) => line.push_str(&csv_field(s)),
                }
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        write!(out, "{{\"metadata\":{},\"columns\":", serde_json::Value::Object(meta))?;
        write!(out, "{},\"rows\":[", serde_json::to_string(&self.columns)?)?;
        let mut line = String::new();
        for (r, row) in self.rows.iter().enumerate() {
            line.clear();
            if r > 0 {
                line.push(',');
            }
            line.push_str("\n[");
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                match *c {
                    Cell::Num(v) if v.is_finite() => line.push_str(&format!("{v:e}")),
                    Cell::Num(_) => line.push_str("null"),
                    Cell::Int(v) => line.push_str(&v.to_string()),
                    Cell::Text(s) => line.push_str(&serde_json::to_string(s)?),
                }
            }
            line.push(']');
            out.write_all(line.as_bytes())?;
        }
        writeln!(out, "]}}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

//! Tabular output with a reproducibility contract: identical runs render
//! byte-identical CSV and JSON.
//!
//! CSV layout: `#`-prefixed metadata lines echoing the full run
//! configuration, a mandatory header row, then data rows in input-grid
//! order. Floats are printed with 17 significant digits so parsing the
//! file recovers the exact binary values.

use std::fmt::Write as _;

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// A rendered result set: configuration echo plus homogeneous rows.
#[derive(Debug, Clone)]
pub struct Table {
    meta: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

/// Fixed float format: 17 significant digits, scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    /// Echo one configuration field (insertion order is preserved in CSV;
    /// JSON sorts keys, which is equally deterministic).
    pub fn meta(&mut self, key: &str, value: impl std::fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Float(x) => fmt_float(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn render_json(&self) -> String {
        use serde_json::{json, Map, Number, Value};
        let mut config = Map::new();
        for (k, v) in &self.meta {
            config.insert(k.clone(), Value::String(v.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Int(i) => Value::Number((*i).into()),
                            Cell::Float(x) => Number::from_f64(*x)
                                .map(Value::Number)
                                .unwrap_or(Value::Null),
                            Cell::Text(s) => Value::String(s.clone()),
                        })
                        .collect(),
                )
            })
            .collect();
        let doc = json!({
            "config": Value::Object(config),
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("static value serializes");
        s.push('\n');
        s
    }
}

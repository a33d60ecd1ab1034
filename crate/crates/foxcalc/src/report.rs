//! Report rendering: one struct per command run, emitted as plain text or
//! as a JSON object with schema-stable keys (`matrix`, `det`, `torsion`,
//! `unit_ambiguity`, `diagnostics`, ...). JSON keys are sorted, so output
//! is byte-identical across runs.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    json: Map<String, Value>,
    text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert(String::from("command"), Value::String(String::from(command)));
        Report { json, text: String::new() }
    }

    pub fn put(&mut self, key: &str, value: Value) {
        self.json.insert(String::from(key), value);
    }

    pub fn line(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => String::from(self.text.trim_end()),
            Format::Json => Value::Object(self.json.clone()).to_string(),
        }
    }
}

pub fn matrix_value(rows: &[Vec<String>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|s| Value::String(s.clone())).collect()))
            .collect(),
    )
}

pub fn int_matrix_value(rows: &[Vec<i64>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|&x| Value::from(x)).collect()))
            .collect(),
    )
}

pub fn diagnostics_value(checks: &[(String, bool)]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|(name, ok)| {
                let mut m = Map::new();
                m.insert(String::from("check"), Value::String(name.clone()));
                m.insert(String::from("passed"), Value::Bool(*ok));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn matrix_lines(report: &mut Report, label: &str, rows: &[Vec<String>]) {
    report.line(&format!("{label}:"));
    for r in rows {
        report.line(&format!("  [{}]", r.join(", ")));
    }
}

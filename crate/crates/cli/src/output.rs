use std::fmt::Write as _;

use betalattice::{format_decimal, Rational};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// One command's output, rendered as JSON or human text.
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Vec<Value>,
    pub pass: bool,
    pub human: String,
    /// header and records, for commands that have a tabular form
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            results: Vec::new(),
            pass: true,
            human: String::new(),
            csv: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.human, "{}", text.as_ref());
    }

    pub fn to_json(&self, elapsed_ms: u64) -> String {
        let doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "pass": self.pass,
            "elapsed_ms": elapsed_ms,
        });
        serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n"
    }

    pub fn to_csv(&self) -> Option<String> {
        let (header, rows) = self.csv.as_ref()?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(header).ok()?;
        for r in rows {
            w.write_record(r).ok()?;
        }
        String::from_utf8(w.into_inner().ok()?).ok()
    }
}

pub fn rational(r: &Rational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": format_decimal(r, 12),
    })
}

/// `11/16 (0.6875)`, or just `1` for integers.
pub fn rational_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{} ({})", r.numer(), r.denom(), format_decimal(r, 12))
    }
}

/// Left-aligned columns separated by two spaces.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, cell) in r.iter().enumerate() {
            if i + 1 < r.len() {
                let _ = write!(line, "{cell:<w$}  ", w = widths[i]);
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

//! Report values and serialization. Every number is wrapped with the way it
//! was obtained.

use std::io::Write;

use anyhow::Result;
use rug::{Float, Integer, Rational};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    ClosedForm,
    ExactRational,
    CertifiedNumeric,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::ClosedForm => "closed-form",
            Source::ExactRational => "exact-rational",
            Source::CertifiedNumeric => "certified-numeric",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Num {
    /// null for non-finite values
    pub value: Option<f64>,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<[Value; 2]>,
}

fn int_value(i: &Integer) -> Value {
    match i.to_i64() {
        Some(v) => json!(v),
        None => json!(i.to_string()),
    }
}

impl Num {
    pub fn closed(v: f64) -> Self {
        Self::new(v, Source::ClosedForm)
    }

    pub fn numeric(v: f64) -> Self {
        Self::new(v, Source::CertifiedNumeric)
    }

    pub fn new(v: f64, source: Source) -> Self {
        Self {
            value: v.is_finite().then_some(v),
            source,
            exact: None,
        }
    }

    pub fn rational(r: &Rational) -> Self {
        Self {
            // nearest double; Rational::to_f64 truncates
            value: Some(Float::with_val(53, r).to_f64()),
            source: Source::ExactRational,
            exact: Some([int_value(r.numer()), int_value(r.denom())]),
        }
    }

    pub fn int(v: usize, source: Source) -> Self {
        Self::new(v as f64, source)
    }

    /// Flattened (value, source, exact) strings for CSV.
    pub fn csv_fields(&self) -> [String; 3] {
        [
            self.value.map_or_else(String::new, |v| v.to_string()),
            self.source.as_str().to_string(),
            self.exact
                .as_ref()
                .map_or_else(String::new, |[n, d]| format!("{}/{}", strip(n), strip(d))),
        ]
    }
}

fn strip(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A finished report: a JSON document plus a CSV table view.
pub struct Report {
    pub json: Vec<Value>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// one JSON document per line instead of a single document
    pub json_lines: bool,
}

impl Report {
    pub fn write(&self, format: crate::config::Format, out: &mut dyn Write) -> Result<()> {
        match format {
            crate::config::Format::Json => {
                if self.json_lines {
                    for v in &self.json {
                        serde_json::to_writer(&mut *out, v)?;
                        writeln!(out)?;
                    }
                } else {
                    for v in &self.json {
                        serde_json::to_writer_pretty(&mut *out, v)?;
                        writeln!(out)?;
                    }
                }
            }
            crate::config::Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.csv_header)?;
                for r in &self.csv_rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

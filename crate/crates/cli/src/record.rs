//! Output records and their JSON / CSV rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::error::CliResult;

/// Keys that describe a result rather than a request input.
pub const OUTPUT_KEYS: &[&str] = &[
    "command",
    "target",
    "value",
    "error_estimate",
    "stderr",
    "method",
    "bias_note",
    "detail",
    "version",
    "bin_lo",
    "bin_hi",
    "check",
    "criterion",
    "reference",
    "tolerance",
    "passed",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Real(f64),
    Count(u64),
    Text(String),
    Flag(bool),
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            // Infinite horizons are written the way the flag accepts them.
            Field::Real(v) if !v.is_finite() => Value::String(v.to_string()),
            Field::Real(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Field::Count(n) => Value::Number((*n).into()),
            Field::Text(s) => Value::String(s.clone()),
            Field::Flag(b) => Value::Bool(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Real(v) if v.is_finite() => format!("{v:.16e}"),
            Field::Real(v) => v.to_string(),
            Field::Count(n) => n.to_string(),
            Field::Text(s) => s.clone(),
            Field::Flag(b) => b.to_string(),
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Count(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Flag(v)
    }
}

/// One self-describing result: the request inputs keyed by flag name,
/// plus the outputs listed in [`OUTPUT_KEYS`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: BTreeMap<String, Field>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.set("command", command);
        r.set("version", env!("CARGO_PKG_VERSION"));
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.fields.insert(key.to_owned(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.get(key)
    }

    pub fn real(&self, key: &str) -> Option<f64> {
        match self.fields.get(key) {
            Some(Field::Real(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        Value::Object(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// JSON lines, or CSV whose columns are the sorted union of record keys.
pub fn write_records<W: Write>(records: &[Record], format: Format, out: &mut W) -> CliResult<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let columns: BTreeSet<&str> = records
                .iter()
                .flat_map(|r| r.fields.keys().map(String::as_str))
                .collect();
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&columns)?;
            for r in records {
                w.write_record(
                    columns
                        .iter()
                        .map(|c| r.fields.get(*c).map(Field::to_csv).unwrap_or_default()),
                )?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

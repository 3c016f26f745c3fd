//! The machine-readable output of one run.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command invocation and its result.
///
/// Keys in `params` and `extra` are kept sorted so that the serialized form
/// depends only on the inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
    /// Command-specific results such as both bounds of a two-sided estimate.
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
    /// Omitted when a seed is given, so that seeded output is reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: &str, value: f64, method: impl Into<String>) -> Self {
        RunRecord {
            command: command.to_string(),
            params: BTreeMap::new(),
            value,
            std_error: None,
            method: method.into(),
            seed: None,
            samples: None,
            oracle_value: None,
            oracle_deviation: None,
            extra: BTreeMap::new(),
            wall_time_ms: None,
            version: VERSION.to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn extra(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }
}

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Floats in CSV cells carry 17 significant digits.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(record: &RunRecord) -> Vec<(String, Value)> {
    let mut cols = vec![("command".to_string(), Value::from(record.command.clone()))];
    cols.extend(record.params.iter().map(|(k, v)| (format!("params.{k}"), v.clone())));
    cols.push(("value".into(), f64_value(record.value)));
    let opt = |x: Option<f64>| x.map(f64_value).unwrap_or(Value::Null);
    cols.push(("std_error".into(), opt(record.std_error)));
    cols.push(("method".into(), record.method.clone().into()));
    cols.push(("seed".into(), record.seed.map(Value::from).unwrap_or(Value::Null)));
    cols.push(("samples".into(), record.samples.map(Value::from).unwrap_or(Value::Null)));
    cols.push(("oracle_value".into(), opt(record.oracle_value)));
    cols.push(("oracle_deviation".into(), opt(record.oracle_deviation)));
    cols.extend(record.extra.iter().map(|(k, v)| (k.clone(), v.clone())));
    cols.push(("wall_time_ms".into(), record.wall_time_ms.map(Value::from).unwrap_or(Value::Null)));
    cols.push(("version".into(), record.version.clone().into()));
    cols
}

/// `serde_json` maps non-finite floats to null; keep them visible instead.
fn f64_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

pub fn write_record(record: &RunRecord, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)
        }
        Format::Csv => {
            let cols = flatten(record);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(cols.iter().map(|(k, _)| k.as_str()))?;
            w.write_record(cols.iter().map(|(_, v)| cell(v)))?;
            w.flush()
        }
    }
}

/// Writes a table of homogeneous JSON objects as CSV, one row per object.
pub fn write_rows(rows: &[Value], out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let Some(Value::Object(first)) = rows.first() else {
        return w.flush();
    };
    let keys: Vec<&String> = first.keys().collect();
    w.write_record(keys.iter().map(|k| k.as_str()))?;
    for row in rows {
        w.write_record(keys.iter().map(|k| cell(row.get(k.as_str()).unwrap_or(&Value::Null))))?;
    }
    w.flush()
}

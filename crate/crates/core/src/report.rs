//! Report serialization: versioned JSON envelopes and CSV flattening.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Top-level wrapper written by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub seeds: Vec<u64>,
    pub params: Value,
    pub results: T,
    pub timing: Value,
}

impl<T> Envelope<T> {
    pub fn new(command: &str, seeds: Vec<u64>, params: Value, results: T, timing: Value) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            version: CODE_VERSION.to_string(),
            command: command.to_string(),
            seeds,
            params,
            results,
            timing,
        }
    }
}

/// Removes every `timing` member, at any depth.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn flatten_into(prefix: &str, value: &Value, out: &mut Map<String, Value>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten_into(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let joined = items.iter().map(scalar_text).collect::<Vec<_>>().join(";");
            out.insert(prefix.to_string(), Value::String(joined));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(&key(&i.to_string()), v, out);
            }
        }
        v => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        v => v.to_string(),
    }
}

/// One flat row per record: nested objects become dotted column names and
/// scalar arrays are joined with `;`.
pub fn flatten(record: &Value) -> Map<String, Value> {
    let mut out = Map::new();
    flatten_into("", record, &mut out);
    out
}

/// Writes records as CSV with the union of their columns, in first-seen order.
pub fn write_csv<W: Write>(records: &[Value], out: W) -> Result<()> {
    let rows: Vec<Map<String, Value>> = records.iter().map(flatten).collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &rows {
        for k in row.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&columns)?;
    for row in &rows {
        w.write_record(
            columns
                .iter()
                .map(|c| row.get(c).map(scalar_text).unwrap_or_default()),
        )?;
    }
    w.flush()?;
    Ok(())
}

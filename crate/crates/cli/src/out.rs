//! Output assembly and rendering.
//!
//! Every command produces one flat-ish JSON object; tabular commands also
//! provide a CSV projection. Nothing here depends on the clock or on
//! iteration order of anything unordered, so a fixed argv and seed always
//! render byte-identical output.

use std::fmt::Write as _;

use serde_json::{Map, Value};
use smoothsum::Error;

use crate::{error_kind, Format};

/// Result payload of a command: named fields in insertion order, plus an
/// optional CSV projection.
pub struct Output {
    pub fields: Value,
    pub table: Option<Table>,
}

impl Output {
    pub fn new(fields: Value) -> Self {
        debug_assert!(fields.is_object());
        Self { fields, table: None }
    }

    pub fn with_table(fields: Value, headers: &'static [&'static str], rows: Vec<Vec<String>>) -> Self {
        Self { fields, table: Some(Table { headers, rows }) }
    }
}

pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

fn envelope(command: &str, seed: u64, fields: Value) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    map.insert("seed".into(), Value::from(seed));
    if let Value::Object(inner) = fields {
        map.extend(inner);
    }
    map
}

/// Render a successful run. The error case is a usage problem (csv asked of
/// a non-tabular command), reported with exit code 2 by the caller.
pub fn render(command: &str, seed: u64, output: Output, format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let map = envelope(command, seed, output.fields);
            Ok(format!("{}\n", Value::Object(map)))
        }
        Format::Text => {
            let map = envelope(command, seed, output.fields);
            let mut text = String::new();
            for (key, value) in &map {
                write_text(&mut text, key, value, 0);
            }
            Ok(text)
        }
        Format::Csv => {
            let table = output.table.ok_or_else(|| {
                format!("csv output is not defined for `{command}`; use --format json or text")
            })?;
            let mut csv = table.headers.join(",");
            csv.push('\n');
            for row in &table.rows {
                csv.push_str(&row.join(","));
                csv.push('\n');
            }
            Ok(csv)
        }
    }
}

/// Structured error object, printed on stdout with exit code 1.
pub fn render_error(command: &str, err: &Error) -> String {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    let mut inner = Map::new();
    inner.insert("kind".into(), Value::String(error_kind(err).into()));
    inner.insert("message".into(), Value::String(err.to_string()));
    map.insert("error".into(), Value::Object(inner));
    format!("{}\n", Value::Object(map))
}

fn scalar(value: &Value) -> String {
    match value {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_text(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match value {
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_text(out, &format!("{key}[{i}]"), item, indent + 2);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: {}", joined.join(" "));
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                write_text(out, k, v, indent + 2);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

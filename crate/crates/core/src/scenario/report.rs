//! Deterministic report serialization. Floats are printed with a fixed
//! number of significant digits (17 in JSON, 12 in CSV) so that repeated
//! runs produce byte-identical files, and writes go through a temporary
//! file renamed into place.

use crate::error::{Error, Result};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::Path;

/// Fixed-width float for JSON output, 17 significant digits.
pub fn fmt_json_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no non-finite literals
        format!("\"{x}\"")
    }
}

/// Fixed-width float for CSV output, 12 significant digits.
pub fn fmt_csv_f64(x: f64) -> String {
    format!("{x:.11e}")
}

fn escape_json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}

/// Render a JSON value with deterministic float formatting and two-space
/// indentation. Object key order is preserved as inserted.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out.push('\n');
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let pad_in = "  ".repeat(indent + 1);
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&fmt_json_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&escape_json_str(s)),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad_in);
                render_into(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad_in);
                out.push_str(&escape_json_str(k));
                out.push_str(": ");
                render_into(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad);
            out.push('}');
        }
    }
}

/// Render one CSV cell; strings must not contain commas or newlines.
pub fn render_csv_cell(value: &Value) -> Result<String> {
    Ok(match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                format!("{i}")
            } else if let Some(u) = n.as_u64() {
                format!("{u}")
            } else {
                fmt_csv_f64(n.as_f64().unwrap_or(f64::NAN))
            }
        }
        Value::String(s) => {
            if s.contains(',') || s.contains('\n') || s.contains('"') {
                return Err(Error::Validation(format!(
                    "CSV cell contains a reserved character: {s:?}"
                )));
            }
            s.clone()
        }
        Value::Bool(b) => format!("{b}"),
        Value::Null => String::new(),
        other => {
            return Err(Error::Validation(format!(
                "value {other} cannot appear in a CSV cell"
            )));
        }
    })
}

/// Build a CSV document from a header and rows of cells.
pub fn render_csv(header: &[String], rows: &[Vec<Value>]) -> Result<String> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::Validation(format!(
                "CSV row has {} cells, header has {}",
                row.len(),
                header.len()
            )));
        }
        let cells: Result<Vec<String>> = row.iter().map(render_csv_cell).collect();
        out.push_str(&cells?.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Write a file atomically: write to a sibling temporary file and rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Current git description of the working tree, or "unknown".
pub fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

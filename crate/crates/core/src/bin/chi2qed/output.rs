//! Rendering with a metadata header: `#` comment lines for CSV/text, a
//! `metadata` object for JSON.

use serde_json::{json, Value};

use crate::params::Params;
use crate::CliError;

pub enum Document {
    /// Header row plus data rows, written RFC-4180 style.
    Csv {
        columns: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    /// Free-form body text (already newline-terminated).
    Text(String),
    Json(Value),
}

impl Document {
    pub fn render(&self, command: &str, params: &Params) -> Result<String, CliError> {
        let version = env!("CARGO_PKG_VERSION");
        match self {
            Document::Json(body) => {
                let mut obj = serde_json::Map::new();
                obj.insert(
                    "metadata".into(),
                    json!({ "tool": "chi2qed", "version": version, "command": command, "parameters": params.to_json() }),
                );
                match body {
                    Value::Object(m) => obj.extend(m.clone()),
                    other => {
                        obj.insert("data".into(), other.clone());
                    }
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj))
                    .map_err(|e| CliError::Numerical(format!("json: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Document::Csv { columns, rows } => {
                let mut s = header(version, command, params);
                s.push_str(&columns.join(","));
                s.push('\n');
                for r in rows {
                    s.push_str(&r.join(","));
                    s.push('\n');
                }
                Ok(s)
            }
            Document::Text(body) => {
                let mut s = header(version, command, params);
                s.push_str(body);
                Ok(s)
            }
        }
    }
}

fn header(version: &str, command: &str, params: &Params) -> String {
    let mut s = format!("# chi2qed {version}\n# command = {command}\n");
    for line in params.header_lines() {
        s.push_str("# ");
        s.push_str(&line);
        s.push('\n');
    }
    s
}

/// Full-precision, locale-free float formatting.
pub fn num(x: f64) -> String {
    chi2qed::dynamics::fmt_full(x)
}

//! Output formatting shared by the subcommands.
//!
//! Every subcommand builds a JSON value. Text output flattens it into
//! `key: value` lines; CSV is only offered where a command has a natural
//! table. Floats are rounded to 14 decimals before they reach either form,
//! so repeated runs give byte-identical output.

use std::fmt::Write;

use clap::ValueEnum;
use hypbill::Error;
use serde_json::{json, Map, Number, Value};

/// Version tag carried by every JSON document.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a subcommand produced, before it is rendered.
pub struct Report {
    pub value: Value,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(value: Value) -> Self {
        Report { value, csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(self, format: Format) -> Result<String, Error> {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema".into(), json!(SCHEMA));
                match self.value {
                    Value::Object(m) => obj.extend(m),
                    other => {
                        obj.insert("result".into(), other);
                    }
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj))
                    .map_err(|e| Error::Inconsistent(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv.ok_or_else(|| {
                Error::Unsupported("CSV output is available for `growth` and `tables` only".into())
            }),
            Format::Text => {
                let mut out = String::new();
                flatten(&self.value, "", &mut out);
                Ok(out)
            }
        }
    }
}

/// Fixed 14-decimal formatting used for every float the CLI prints.
pub fn fixed(x: f64) -> String {
    format!("{x:.14}")
}

/// A float as a JSON number, rounded the same way as [`fixed`].
pub fn float(x: f64) -> Value {
    fixed(x)
        .parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map_or_else(|| Value::String(fixed(x)), Value::Number)
}

/// Integers that fit in `i64` become numbers, larger ones strings.
pub fn big(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or(Value::String(s), |n| json!(n))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(match n.as_f64() {
            Some(f) if n.is_f64() && f != 0.0 && f.abs() < 1e-6 => format!("{f:e}"),
            Some(f) if n.is_f64() => fixed(f),
            _ => n.to_string(),
        }),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(x, &key(k), out);
            }
        }
        Value::Array(xs) => match xs.iter().map(scalar).collect::<Option<Vec<_>>>() {
            Some(items) => {
                let _ = writeln!(out, "{prefix}: {}", items.join(" "));
            }
            None => {
                for (i, x) in xs.iter().enumerate() {
                    flatten(x, &key(&i.to_string()), out);
                }
            }
        },
        _ => {
            let _ = writeln!(out, "{prefix}: {}", scalar(v).unwrap_or_default());
        }
    }
}

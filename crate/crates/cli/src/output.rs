use std::fmt::Write as _;

use nsimplex::poly::IntPolynomial;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Polynomial,
    Numeral,
    BooleanReport,
    Table,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Polynomial => "polynomial",
            Kind::Numeral => "numeral",
            Kind::BooleanReport => "boolean-report",
            Kind::Table => "table",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Poly(IntPolynomial),
    Bool(bool),
    Text(String),
    /// Integer kept as its decimal string.
    Int(String),
    List(Vec<Value>),
    Table {
        headers: Vec<String>,
        rows: Vec<Vec<Value>>,
    },
}

impl Value {
    pub fn int(x: impl ToString) -> Self {
        Value::Int(x.to_string())
    }

    pub fn ints<T: ToString>(xs: impl IntoIterator<Item = T>) -> Self {
        Value::List(xs.into_iter().map(Value::int).collect())
    }

    fn text(&self) -> String {
        match self {
            Value::Poly(p) => p.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) | Value::Int(s) => s.clone(),
            Value::List(items) => format!(
                "({})",
                items.iter().map(Value::text).collect::<Vec<_>>().join(", ")
            ),
            Value::Table { headers, rows } => {
                let mut out = format!("\n  {}", headers.join("\t"));
                for row in rows {
                    let _ = write!(
                        out,
                        "\n  {}",
                        row.iter().map(Value::text).collect::<Vec<_>>().join("\t")
                    );
                }
                out
            }
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Poly(p) => {
                json!({ "coeffs": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>() })
            }
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) | Value::Int(s) => Json::String(s.clone()),
            Value::List(items) => Json::Array(items.iter().map(Value::json).collect()),
            Value::Table { headers, rows } => Json::Array(
                rows.iter()
                    .map(|row| {
                        Json::Object(
                            headers
                                .iter()
                                .cloned()
                                .zip(row.iter().map(Value::json))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        }
    }

    /// Flat cell for CSV: polynomials and lists become space-separated items.
    fn cell(&self) -> String {
        let raw = match self {
            Value::Poly(p) => p
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            Value::List(items) => items.iter().map(Value::cell).collect::<Vec<_>>().join(" "),
            other => other.text(),
        };
        if raw.contains([',', '"', '\n']) {
            format!("\"{}\"", raw.replace('"', "\"\""))
        } else {
            raw
        }
    }
}

/// Result of one subcommand. `success` drives the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputDocument {
    pub kind: Kind,
    pub entries: Vec<(String, Value)>,
    pub success: bool,
}

impl OutputDocument {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            entries: Vec::new(),
            success: true,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.entries.push((key.into(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self
                .entries
                .iter()
                .map(|(k, v)| format!("{k}: {}", v.text()))
                .collect::<Vec<_>>()
                .join("\n"),
            Format::Json => {
                let mut map = Map::new();
                map.insert("kind".into(), Json::String(self.kind.name().into()));
                for (k, v) in &self.entries {
                    map.insert(k.clone(), v.json());
                }
                map.insert("success".into(), Json::Bool(self.success));
                serde_json::to_string_pretty(&Json::Object(map)).expect("serializable")
            }
            Format::Csv => {
                let mut lines = vec!["key,value".to_string()];
                let mut tables = Vec::new();
                for (k, v) in &self.entries {
                    match v {
                        Value::Table { headers, rows } => tables.push((k, headers, rows)),
                        other => lines.push(format!("{k},{}", other.cell())),
                    }
                }
                for (k, headers, rows) in tables {
                    lines.push(String::new());
                    lines.push(format!("# {k}"));
                    lines.push(headers.join(","));
                    for row in rows {
                        lines.push(row.iter().map(Value::cell).collect::<Vec<_>>().join(","));
                    }
                }
                lines.join("\n")
            }
        }
    }
}

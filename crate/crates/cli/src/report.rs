//! Results and their rendering.

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// An ordered list of named result fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("schema".into(), SCHEMA_VERSION.into());
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    /// One line of output, newline terminated.
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = self.to_json().to_string();
                s.push('\n');
                s
            }
            Format::Text => self
                .fields
                .iter()
                .map(|(k, v)| format!("{k}: {}\n", text(v)))
                .collect(),
        }
    }
}

fn text(value: &Value) -> String {
    match value {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Object(map) => match (
            map.get("element"),
            map.get("num"),
            map.get("den"),
            map.len(),
        ) {
            (None, Some(n), Some(d), 2) => format!("{n}/{d}"),
            (Some(e), Some(n), Some(d), 3) => format!("{} ({n}/{d})", text(e)),
            _ => value.to_string(),
        },
        other => other.to_string(),
    }
}

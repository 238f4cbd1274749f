//! Report assembly and rendering. One `Row` per series, grid item, or
//! coefficient; the JSON layout splits rows into `results`, `terms`, and
//! `residuals` arrays, the CSV layout emits one line per row under a
//! fixed header.

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct Row {
    pub id: String,
    pub value: Option<String>,
    pub terms: Option<u64>,
    pub residual: Option<String>,
    pub pass: Option<bool>,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub rows: Vec<Row>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Map::new(),
            rows: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param<V: Into<Value>>(&mut self, key: &str, value: V) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        let results: Vec<Value> = self
            .rows
            .iter()
            .filter(|r| r.value.is_some())
            .map(|r| json!({ "id": r.id, "value": r.value, "pass": r.pass }))
            .collect();
        let residuals: Vec<Value> = self
            .rows
            .iter()
            .filter(|r| r.residual.is_some())
            .map(|r| json!({ "id": r.id, "residual": r.residual, "pass": r.pass }))
            .collect();
        let terms: Vec<Value> = self
            .rows
            .iter()
            .filter(|r| r.terms.is_some())
            .map(|r| json!({ "id": r.id, "terms": r.terms }))
            .collect();
        serde_json::to_string_pretty(&json!({
            "command": self.command,
            "params": self.params,
            "results": results,
            "residuals": residuals,
            "terms": terms,
            "wall_time_ms": self.wall_time_ms,
            "schema_version": SCHEMA_VERSION,
        }))
        .expect("report serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,value,terms,residual,pass");
        for r in &self.rows {
            let quote = |s: &str| {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.to_string()
                }
            };
            out.push('\n');
            out.push_str(&format!(
                "{},{},{},{},{}",
                quote(&r.id),
                r.value.as_deref().map(quote).unwrap_or_default(),
                r.terms.map(|t| t.to_string()).unwrap_or_default(),
                r.residual.as_deref().map(quote).unwrap_or_default(),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
            ));
        }
        out
    }
}

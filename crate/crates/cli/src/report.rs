//! Report assembly: each verb renders its result once into text lines and
//! JSON fields, and the finished report is written to stdout or a file.
//! Rationals are serialized as exact strings like "-3/2".

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

use qtrans_core::rat::{rat_string, Rat};
use qtrans_core::{Poly, PolyMap, QMatrix, RankReport};

pub struct Report {
    lines: Vec<String>,
    json: Map<String, Value>,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        let mut json = Map::new();
        json.insert("verb".into(), Value::String(verb.into()));
        Report { lines: Vec::new(), json }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    /// Writes either the text lines or the JSON object, each with a trailing
    /// newline, so repeated runs are byte-identical.
    pub fn emit(self, json: bool, out: Option<&Path>) -> io::Result<()> {
        let mut body = if json {
            serde_json::to_string_pretty(&Value::Object(self.json)).expect("report serializes")
        } else {
            self.lines.join("\n")
        };
        body.push('\n');
        match out {
            Some(path) => fs::write(path, body),
            None => io::stdout().write_all(body.as_bytes()),
        }
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(rat_string(r))
}

pub fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn qmatrix_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| rat_vec_json(m.row(i))).collect())
}

pub fn poly_json(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn map_json(m: &PolyMap) -> Value {
    Value::Array(m.components().iter().map(poly_json).collect())
}

pub fn rank_json(report: &RankReport) -> Value {
    let mut obj = Map::new();
    obj.insert("rank".into(), Value::from(report.rank));
    obj.insert("mode".into(), Value::String(format!("{:?}", report.mode).to_lowercase()));
    if let Some(bound) = &report.failure_bound {
        obj.insert("failure_bound".into(), rat_json(bound));
    }
    Value::Object(obj)
}

/// Renders a rational vector for text output: "(1, -1/2, 0)".
pub fn rat_vec_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(rat_string).collect();
    format!("({})", parts.join(", "))
}

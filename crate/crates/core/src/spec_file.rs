//! JSON input files:
//! `{"c": int, "n": int, "r": int, "terms": [{"B": [[int]], "C": [[int]]}], "name": string?}`.
//!
//! Parsing is strict. Every problem found is reported with a JSON pointer to
//! the offending value.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result, SchemaViolation};
use crate::tensor::{flatten, FlatForm, TensorSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecTerm {
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub c: usize,
    pub n: usize,
    pub r: usize,
    pub terms: Vec<SpecTerm>,
}

impl SpecFile {
    pub fn tensor(&self) -> Result<TensorSpec> {
        let terms: Vec<_> = self.terms.iter().map(|t| (t.b.clone(), t.c.clone())).collect();
        TensorSpec::new(self.c, self.n, &terms)
    }

    pub fn form(&self) -> Result<FlatForm> {
        flatten(&self.tensor()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

struct Collector(Vec<SchemaViolation>);

impl Collector {
    fn push(&mut self, pointer: impl Into<String>, message: impl Into<String>) {
        self.0.push(SchemaViolation { pointer: pointer.into(), message: message.into() });
    }

    fn count(&mut self, obj: &Map<String, Value>, key: &str) -> Option<usize> {
        let ptr = format!("/{key}");
        match obj.get(key) {
            None => {
                self.push(ptr, "missing required field");
                None
            }
            Some(v) => match v.as_u64() {
                Some(x) => Some(x as usize),
                None => {
                    self.push(ptr, "expected a non-negative integer");
                    None
                }
            },
        }
    }

    fn int_matrix(&mut self, v: &Value, ptr: &str) -> Option<Vec<Vec<i64>>> {
        let Some(rows) = v.as_array() else {
            self.push(ptr, "expected an array of rows");
            return None;
        };
        let mut out = Vec::with_capacity(rows.len());
        let mut ok = true;
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row.as_array() else {
                self.push(format!("{ptr}/{i}"), "expected an array of integers");
                ok = false;
                continue;
            };
            let mut r = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                match x.as_i64() {
                    Some(x) => r.push(x),
                    None => {
                        self.push(format!("{ptr}/{i}/{j}"), "expected an integer");
                        ok = false;
                    }
                }
            }
            out.push(r);
        }
        ok.then_some(out)
    }

    fn check_square_skew(&mut self, m: &[Vec<i64>], size: Option<usize>, ptr: &str, what: &str) -> bool {
        if let Some(size) = size {
            if m.len() != size || m.iter().any(|r| r.len() != size) {
                self.push(ptr, format!("shape mismatch: {what} must be {size}x{size}"));
                return false;
            }
        } else if m.iter().any(|r| r.len() != m.len()) {
            self.push(ptr, format!("shape mismatch: {what} must be square"));
            return false;
        }
        for i in 0..m.len() {
            for j in i..m.len() {
                if m[i][j] != -m[j][i] {
                    self.push(ptr, format!("not skew-symmetric: entry ({i},{j}) is {}, entry ({j},{i}) is {}", m[i][j], m[j][i]));
                    return false;
                }
            }
        }
        true
    }
}

pub fn parse_spec_value(doc: &Value) -> Result<SpecFile> {
    let mut col = Collector(Vec::new());
    let Some(obj) = doc.as_object() else {
        return Err(Error::Schema(vec![SchemaViolation { pointer: String::new(), message: "expected an object".into() }]));
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "c" | "n" | "r" | "terms" | "name") {
            col.push(format!("/{}", escape(key)), "unknown field");
        }
    }
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => {
            col.push("/name", "expected a string");
            None
        }
    };
    let c = col.count(obj, "c");
    let n = col.count(obj, "n");
    let r = col.count(obj, "r");
    if c == Some(0) {
        col.push("/c", "charge must be at least 1");
    }
    if n == Some(0) {
        col.push("/n", "dimension must be at least 1");
    }

    let mut terms = Vec::new();
    match obj.get("terms") {
        None => col.push("/terms", "missing required field"),
        Some(Value::Array(items)) => {
            if items.is_empty() {
                col.push("/terms", "expected at least one term");
            }
            for (t, item) in items.iter().enumerate() {
                let ptr = format!("/terms/{t}");
                let Some(term) = item.as_object() else {
                    col.push(ptr, "expected an object with fields B and C");
                    continue;
                };
                for key in term.keys() {
                    if key != "B" && key != "C" {
                        col.push(format!("{ptr}/{}", escape(key)), "unknown field");
                    }
                }
                let mut get = |key: &str, size: Option<usize>| -> Option<Vec<Vec<i64>>> {
                    let p = format!("{ptr}/{key}");
                    let Some(v) = term.get(key) else {
                        col.push(p, "missing required field");
                        return None;
                    };
                    let m = col.int_matrix(v, &p)?;
                    col.check_square_skew(&m, size, &p, key).then_some(m)
                };
                let b = get("B", c);
                let cm = get("C", n.map(|n| n + 1));
                if let (Some(b), Some(cm)) = (b, cm) {
                    terms.push(SpecTerm { b, c: cm });
                }
            }
        }
        Some(_) => col.push("/terms", "expected an array"),
    }

    if !col.0.is_empty() {
        return Err(Error::Schema(col.0));
    }
    Ok(SpecFile { name, c: c.unwrap(), n: n.unwrap(), r: r.unwrap(), terms })
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::Schema(vec![SchemaViolation { pointer: String::new(), message: format!("invalid JSON: {e}") }])
    })?;
    parse_spec_value(&doc)
}

pub fn parse_spec(path: impl AsRef<Path>) -> Result<SpecFile> {
    parse_spec_str(&std::fs::read_to_string(path)?)
}

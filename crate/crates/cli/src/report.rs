//! Reports: an ordered set of named results rendered as text or JSON.

use derivalg::polyring::format_rational;
use derivalg::{PolyMap, Polynomial, Rational};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub notes: Vec<String>,
    /// False when a checked identity failed.
    pub consistent: bool,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            notes: Vec::new(),
            consistent: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Records a check; a failed check marks the report inconsistent.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.consistent &= ok;
        self.result(key, ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "notes": self.notes,
            "consistent": self.consistent,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.inputs.is_empty() {
            out.push_str("inputs:\n");
            render_map(&self.inputs, 1, &mut out);
        }
        out.push_str("results:\n");
        render_map(&self.results, 1, &mut out);
        if !self.notes.is_empty() {
            out.push_str("notes:\n");
            for n in &self.notes {
                out.push_str(&format!("  - {n}\n"));
            }
        }
        out.push_str(&format!("consistent: {}\n", self.consistent));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(inline) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

/// Scalars that can sit inside a one-line `[a, b]` list.
fn inline(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.contains(','),
        Value::Array(_) | Value::Object(_) => false,
        _ => true,
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_value(v, depth + 1, out);
            }
        }
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => render_map(m, depth, out),
        Value::Array(items) => {
            for item in items {
                match (item, scalar(item)) {
                    (_, Some(s)) => out.push_str(&format!("{pad}- {s}\n")),
                    (Value::Object(m), None) => {
                        let mut inner = String::new();
                        render_map(m, depth + 1, &mut inner);
                        out.push_str(&format!("{pad}-{}", &inner[pad.len() + 1..]));
                    }
                    _ => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn rational(c: &Rational) -> Value {
    Value::String(format_rational(c))
}

pub fn poly(p: &Polynomial, vars: &[String]) -> Value {
    Value::String(p.format(vars))
}

/// A map as its list of component strings.
pub fn map(f: &PolyMap, vars: &[String]) -> Value {
    Value::Array(f.components().iter().map(|p| poly(p, vars)).collect())
}

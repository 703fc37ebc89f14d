//! Run reports and their JSON and text renderings.

use serde_json::{json, Map, Value};

use qgkit_core::{Report, Status};

use crate::config::Format;

pub const SCHEMA: u64 = 1;

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub checks: Report,
    /// Command-specific certificate data.
    pub result: Value,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.into(), result: Value::Null, ..RunReport::default() }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    /// `ok` when nothing was checked; otherwise fail beats undecided beats pass.
    pub fn status(&self) -> &'static str {
        let entries = &self.checks.entries;
        if entries.is_empty() {
            "ok"
        } else if entries.iter().any(|e| e.status == Status::Fail) {
            "fail"
        } else if entries.iter().any(|e| matches!(e.status, Status::Undecided { .. })) {
            "undecided-at-bound"
        } else {
            "pass"
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            "ok" | "pass" => 0,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let checks: Vec<Value> = self
            .checks
            .entries
            .iter()
            .map(|e| {
                let mut o = Map::new();
                o.insert("name".into(), json!(e.name));
                o.insert("status".into(), json!(e.status.as_str()));
                if let Status::Undecided { bound } = e.status {
                    o.insert("bound".into(), json!(bound));
                }
                if let Some(r) = &e.residual {
                    o.insert("residual".into(), json!(r));
                }
                Value::Object(o)
            })
            .collect();
        let notes: Vec<Value> = self.checks.notes.iter().map(|(k, v)| json!({ "name": k, "value": v })).collect();
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": inputs,
            "status": self.status(),
            "exit": self.exit_code(),
            "checks": checks,
            "notes": notes,
            "result": self.result,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        if !self.result.is_null() {
            out.push_str("result:\n");
            write_value(&mut out, &self.result, 1);
        }
        for (k, v) in &self.checks.notes {
            out.push_str(&format!("note {k}: {v}\n"));
        }
        for e in &self.checks.entries {
            out.push_str(&format!("{:<20} {}", e.status.as_str(), e.name));
            if let Some(r) = &e.residual {
                out.push_str(&format!("  residual: {r}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status()));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, x, depth + 1);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    write_value(out, x, depth + 1);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_exit() {
        let mut r = RunReport::new("x");
        assert_eq!((r.status(), r.exit_code()), ("ok", 0));
        r.checks.pass("a");
        assert_eq!((r.status(), r.exit_code()), ("pass", 0));
        r.checks.push("b", Status::Undecided { bound: 4 }, Some("y".into()));
        assert_eq!((r.status(), r.exit_code()), ("undecided-at-bound", 1));
        r.checks.push("c", Status::Fail, Some("z".into()));
        assert_eq!((r.status(), r.exit_code()), ("fail", 1));
    }

    #[test]
    fn json_shape() {
        let mut r = RunReport::new("check").input("n", 3);
        r.checks.push("b", Status::Undecided { bound: 4 }, Some("y".into()));
        r.checks.note("system", "s".into());
        let v = r.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["inputs"]["n"], "3");
        assert_eq!(v["checks"][0]["status"], "undecided-at-bound");
        assert_eq!(v["checks"][0]["bound"], 4);
        assert_eq!(v["notes"][0]["name"], "system");
        let text = r.render(Format::Json);
        assert_eq!(text, r.render(Format::Json));
        assert!(text.find("\"checks\"").unwrap() < text.find("\"schema\"").unwrap());
    }

    #[test]
    fn text_shape() {
        let mut r = RunReport::new("omega").input("n", 2);
        r.result = json!({ "dimension": 1, "basis": [{ "12": "-q^(1)", "21": "1" }] });
        let t = r.to_text();
        assert!(t.contains("dimension: 1"));
        assert!(t.contains("12: -q^(1)"));
        assert!(t.ends_with("status: ok\n"));
    }
}

//! The report every command produces, as JSON or as text.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "problema/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A property failed; the result carries the counterexample.
    Violation,
    /// Bad invocation or definition files.
    Usage,
    /// Some part of the answer is unknown at the given fuel.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Usage => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub args: Vec<String>,
    pub fuel: u64,
    pub status: Status,
    pub exit_code: u8,
    pub result: Value,
    pub caveats: Vec<String>,
}

impl Report {
    pub fn new(
        command: &str,
        args: Vec<String>,
        fuel: u64,
        status: Status,
        result: Value,
        caveats: Vec<String>,
    ) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            args,
            fuel,
            status,
            exit_code: status.exit_code(),
            result,
            caveats,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The same fields as [`Report::json`], laid out for reading.
    pub fn text(&self) -> String {
        let mut out = String::new();
        render(&self.result, 0, &mut out);
        for c in &self.caveats {
            out.push_str(&format!("caveat: {c}\n"));
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Violation => "VIOLATION",
            Status::Usage => "usage error",
            Status::Inconclusive => "inconclusive at this fuel",
        };
        out.push_str(&format!(
            "{}: {status} (fuel {})\n",
            self.command, self.fuel
        ));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(if s.is_empty() {
            "\"\"".into()
        } else {
            s.clone()
        }),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn indent(depth: usize) -> String {
    "  ".repeat(depth)
}

fn render(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                let key = k.replace('_', " ");
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{}{key}: {s}\n", indent(depth))),
                    None => {
                        out.push_str(&format!("{}{key}:\n", indent(depth)));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{}- {s}\n", indent(depth))),
                    None => {
                        // first field on the dash line
                        let mut inner = String::new();
                        render(item, depth + 1, &mut inner);
                        let pad = indent(depth + 1);
                        match inner.strip_prefix(&pad) {
                            Some(rest) => out.push_str(&format!("{}- {rest}", indent(depth))),
                            None => out.push_str(&inner),
                        }
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{}{line}\n", indent(depth)));
            }
        }
        other => out.push_str(&format!(
            "{}{}\n",
            indent(depth),
            scalar(other).unwrap_or_default()
        )),
    }
}

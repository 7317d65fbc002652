use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Negative,
    InputError,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    /// Short machine-readable name of the failed check.
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

/// What every command prints on standard output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

/// A command's outcome before it is wrapped in a report.
pub struct Outcome {
    pub status: Status,
    pub result: Option<Value>,
    pub error: Option<ErrorBody>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { status: Status::Ok, result: Some(result), error: None }
    }

    /// A well-formed negative verdict; the result still describes it.
    pub fn negative(result: Value) -> Self {
        Outcome { status: Status::Negative, result: Some(result), error: None }
    }

    pub fn verdict(holds: bool, result: Value) -> Self {
        if holds { Self::ok(result) } else { Self::negative(result) }
    }
}

/// A failure that ends a command early.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub body: ErrorBody,
}

impl Failure {
    pub fn new(status: Status, kind: &str, message: impl Into<String>) -> Self {
        Failure { status, body: ErrorBody { kind: kind.into(), message: message.into(), detail: None } }
    }

    pub fn input(kind: &str, message: impl Into<String>) -> Self {
        Self::new(Status::InputError, kind, message)
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.body.detail = Some(detail);
        self
    }
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Self {
        Outcome { status: f.status, result: None, error: Some(f.body) }
    }
}

impl Report {
    pub fn new(command: &str, o: Outcome) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.into(),
            status: o.status,
            exit_code: o.status.exit_code(),
            result: o.result,
            error: o.error,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{}: {:?} (exit {})\n", self.command, self.status, self.exit_code);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error [{}]: {}", e.kind, e.message);
            if let Some(d) = &e.detail {
                render(d, 1, &mut out);
            }
        }
        if let Some(r) = &self.result {
            render(r, 0, &mut out);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) && a.len() <= 32 => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

/// Indented `key: value` lines; short arrays stay on one line.
fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

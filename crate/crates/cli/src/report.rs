//! JSON-lines reports: a command echo with input digests, named exact
//! rational outputs (decimal only in the auxiliary `approx` field), and
//! assertion rows that drive the exit code.

use num_traits::ToPrimitive;
use serde::Serialize;
use sha2::{Digest, Sha256};
use sumloc_core::rat::Rat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Serialize)]
struct HeaderLine<'a> {
    command: &'a str,
    inputs: &'a [InputDigest],
}

#[derive(Serialize, Clone)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
}

#[derive(Serialize)]
struct ValueLine<'a> {
    output: &'a str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<f64>,
}

#[derive(Serialize)]
struct AssertionLine<'a> {
    assertion: &'a str,
    lhs: String,
    relation: &'a str,
    rhs: String,
    pass: bool,
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    error: &'a str,
}

#[derive(Serialize)]
struct StatusLine {
    status: &'static str,
    passed: u64,
    failed: u64,
}

pub fn digest(file: &str, bytes: &[u8]) -> InputDigest {
    let mut h = Sha256::new();
    h.update(bytes);
    InputDigest { file: file.to_string(), sha256: format!("{:x}", h.finalize()) }
}

/// Collects report lines and the pass/fail tally; `finish` renders the
/// status line and the exit code. Output is deterministic: struct fields
/// serialize in declaration order and every number is an exact string.
pub struct Report {
    lines: Vec<String>,
    passed: u64,
    failed: u64,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report lines are always serializable")
}

impl Report {
    pub fn new(command: &str, inputs: &[InputDigest]) -> Report {
        let header = json(&HeaderLine { command, inputs });
        Report { lines: vec![header], passed: 0, failed: 0 }
    }

    pub fn value(&mut self, name: &str, v: &Rat) {
        let approx = if v.is_integer() { None } else { v.to_f64() };
        self.lines.push(json(&ValueLine { output: name, value: v.to_string(), approx }));
    }

    pub fn int(&mut self, name: &str, v: u64) {
        self.lines.push(json(&ValueLine { output: name, value: v.to_string(), approx: None }));
    }

    pub fn flag(&mut self, name: &str, v: bool) {
        self.lines.push(json(&ValueLine { output: name, value: v.to_string(), approx: None }));
    }

    pub fn text(&mut self, name: &str, v: &str) {
        self.lines.push(json(&ValueLine { output: name, value: v.to_string(), approx: None }));
    }

    pub fn assert_rat(&mut self, name: &str, lhs: &Rat, relation: &str, rhs: &Rat) -> bool {
        let pass = match relation {
            "==" => lhs == rhs,
            "<=" => lhs <= rhs,
            ">=" => lhs >= rhs,
            "<" => lhs < rhs,
            ">" => lhs > rhs,
            _ => false,
        };
        self.record(name, lhs.to_string(), relation, rhs.to_string(), pass);
        pass
    }

    pub fn assert_bool(&mut self, name: &str, pass: bool) -> bool {
        self.record(name, pass.to_string(), "==", "true".to_string(), pass);
        pass
    }

    fn record(&mut self, name: &str, lhs: String, relation: &str, rhs: String, pass: bool) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.lines.push(json(&AssertionLine { assertion: name, lhs, relation, rhs, pass }));
    }

    pub fn error(&mut self, message: &str) {
        self.lines.push(json(&ErrorLine { error: message }));
    }

    /// Renders with a terminal error line and a caller-chosen exit code
    /// (usage or budget), bypassing the assertion tally.
    pub fn render_error(mut self, message: &str, code: i32) -> (String, i32) {
        self.error(message);
        self.lines.push(json(&StatusLine {
            status: "error",
            passed: self.passed,
            failed: self.failed,
        }));
        let mut out = self.lines.join("\n");
        out.push('\n');
        (out, code)
    }

    pub fn render(mut self) -> (String, i32) {
        let status = if self.failed == 0 { "ok" } else { "failed" };
        self.lines.push(json(&StatusLine { status, passed: self.passed, failed: self.failed }));
        let mut out = self.lines.join("\n");
        out.push('\n');
        let code = if self.failed == 0 { EXIT_OK } else { EXIT_ASSERTION };
        (out, code)
    }
}

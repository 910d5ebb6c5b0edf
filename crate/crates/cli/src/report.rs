use std::io::{self, Write};

use beauville_core::{Outcome, Verdict};
use serde_json::{json, Value};

/// Exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Human-readable lines, keyed verdicts and a machine-readable section.
pub struct Report {
    command: String,
    lines: Vec<String>,
    items: Vec<(String, Verdict)>,
    data: Value,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report { command, lines: Vec::new(), items: Vec::new(), data: json!({}) }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn item(&mut self, key: impl Into<String>, verdict: Verdict) {
        self.items.push((key.into(), verdict));
    }

    pub fn data(&mut self, key: &str, value: Value) {
        self.data[key] = value;
    }

    pub fn exit_code(&self) -> i32 {
        if self.items.iter().any(|(_, v)| v.outcome == Outcome::Fail) {
            EXIT_FAIL
        } else if self.items.iter().any(|(_, v)| v.outcome == Outcome::Undetermined) {
            EXIT_UNDETERMINED
        } else {
            EXIT_PASS
        }
    }

    fn overall(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PASS => "PASS",
            EXIT_FAIL => "FAIL",
            _ => "UNDETERMINED",
        }
    }

    pub fn write(&mut self, out: &mut dyn Write) -> io::Result<()> {
        self.items.sort_by(|a, b| a.0.cmp(&b.0));
        writeln!(out, "command: {}", self.command)?;
        for l in &self.lines {
            writeln!(out, "{l}")?;
        }
        for (k, v) in &self.items {
            writeln!(out, "  {k}: {v}")?;
        }
        if !self.items.is_empty() {
            writeln!(out, "overall: {}", self.overall())?;
        }
        let items: Vec<Value> =
            self.items.iter().map(|(k, v)| json!({"key": k, "outcome": v.outcome, "reason": v.reason})).collect();
        let machine = json!({
            "command": self.command,
            "items": items,
            "data": self.data,
            "exit_code": self.exit_code(),
        });
        writeln!(out, "--- json")?;
        writeln!(out, "{}", serde_json::to_string_pretty(&machine).expect("values serialize"))
    }
}

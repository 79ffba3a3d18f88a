use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Passed,
    Failed,
    Skipped,
}

impl Check {
    pub fn from_bool(ok: bool) -> Check {
        if ok {
            Check::Passed
        } else {
            Check::Failed
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// Wall time in milliseconds; absent from reports that must be
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub checks: BTreeMap<String, Check>,
    /// Human-readable rendering of `result`.
    #[serde(skip)]
    pub text: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> RunReport {
        RunReport {
            command: command.into(),
            inputs,
            result: Value::Null,
            timing_ms: None,
            checks: BTreeMap::new(),
            text: String::new(),
        }
    }

    pub fn check(&mut self, name: &str, c: Check) {
        self.checks.insert(name.into(), c);
    }

    pub fn ok(&self) -> bool {
        self.checks.values().all(|c| *c != Check::Failed)
    }

    pub fn render_text(&self) -> String {
        let mut s = self.text.clone();
        if !s.is_empty() && !s.ends_with('\n') {
            s.push('\n');
        }
        for (name, c) in &self.checks {
            let tag = match c {
                Check::Passed => "passed",
                Check::Failed => "FAILED",
                Check::Skipped => "skipped",
            };
            s.push_str(&format!("check {name}: {tag}\n"));
        }
        if let Some(ms) = self.timing_ms {
            s.push_str(&format!("time: {ms:.1} ms\n"));
        }
        s
    }
}

//! Structured verification reports: an ordered list of steps, each with
//! a claim, a citation for the fact being checked, a verdict, and
//! witness data. Reports are deterministic given (command, inputs,
//! seed): inputs are kept in a sorted map and no step carries
//! timestamps or addresses.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub claim: String,
    pub citation: String,
    pub verdict: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub seed: u64,
    pub steps: Vec<Step>,
    pub verdict: String,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed,
            steps: Vec::new(),
            verdict: "pass".to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, claim: &str, citation: &str, pass: bool, witness: Value) {
        self.steps.push(Step {
            claim: claim.to_string(),
            citation: citation.to_string(),
            verdict: verdict_str(pass).to_string(),
            witness,
        });
        if !pass {
            self.verdict = "fail".to_string();
        }
    }

    /// Absorb another report's steps, prefixing their claims.
    pub fn absorb(&mut self, prefix: &str, other: &Report) {
        for step in &other.steps {
            let pass = step.verdict == "pass";
            self.push(
                &format!("{prefix}: {}", step.claim),
                &step.citation,
                pass,
                step.witness.clone(),
            );
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "seed: {}", self.seed);
        if !self.inputs.is_empty() {
            let rendered: Vec<String> =
                self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "inputs: {}", rendered.join(", "));
        }
        for step in &self.steps {
            let tag = if step.verdict == "pass" { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {} ({})", step.claim, step.citation);
            if !step.witness.is_null() {
                let _ = writeln!(out, "       {}", render_witness(&step.witness));
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

fn verdict_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn render_witness(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_steps() {
        let mut r = Report::new("demo", 7);
        r.push("first", "c", true, Value::Null);
        assert!(r.passed());
        r.push("second", "c", false, Value::Null);
        assert!(!r.passed());
        assert_eq!(r.verdict, "fail");
    }

    #[test]
    fn json_is_deterministic() {
        let build = || {
            let mut r = Report::new("demo", 7);
            r.input("zeta", 1);
            r.input("alpha", 2);
            r.push("step", "cite", true, Value::String("w".into()));
            r
        };
        assert_eq!(build().to_json(), build().to_json());
    }
}

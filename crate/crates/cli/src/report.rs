use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Pass/fail of one invariant, with the first counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl Certificate {
    pub fn from_failures<I: IntoIterator<Item = String>>(name: &str, checked: usize, failures: I) -> Self {
        let first = failures.into_iter().next();
        Certificate { name: name.to_string(), passed: first.is_none(), checked, counterexample: first }
    }

    pub fn single(name: &str, ok: bool, counterexample: impl FnOnce() -> String) -> Self {
        Certificate {
            name: name.to_string(),
            passed: ok,
            checked: 1,
            counterexample: if ok { None } else { Some(counterexample()) },
        }
    }

    pub fn line(&self) -> String {
        match (&self.passed, &self.counterexample) {
            (true, _) if self.checked == 1 => format!("check {}: pass (1 case)", self.name),
            (true, _) => format!("check {}: pass ({} cases)", self.name, self.checked),
            (false, Some(c)) => format!("check {}: FAIL, first counterexample: {c}", self.name),
            (false, None) => format!("check {}: FAIL", self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub certificates: Vec<Certificate>,
    pub timing: Timing,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    /// Pretty JSON with a trailing newline. Object keys come out sorted, so
    /// parsing and re-emitting gives the same bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

//! Structured pass/fail records for the verification suites.
//!
//! Every suite produces one [`Report`] serialized as a single JSON object:
//! `{"check": ..., "params": {...}, "status": "pass"|"fail"|"inconclusive",
//! "dims": {...}?, "counterexample": ...?}` plus check-specific extras.
//! Field order and map ordering are fixed so identical runs emit identical
//! bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Check-specific extra fields, flattened into the JSON object.
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            dims: None,
            counterexample: None,
            extra: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn extra(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    pub fn dim(mut self, key: &str, value: usize) -> Self {
        self.dims
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), value);
        self
    }

    /// Record a failure; the first counterexample wins.
    pub fn fail(&mut self, counterexample: String) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = Some(counterexample);
        }
    }

    pub fn inconclusive(&mut self, note: String) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
            self.counterexample = Some(note);
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    /// One-line JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// Human-readable one-liner.
    pub fn to_text(&self) -> String {
        let mut line = format!("{:<24} {}", self.check, self.status);
        if let Some(d) = &self.dims {
            let dims: Vec<String> = d.iter().map(|(k, v)| format!("{k}={v}")).collect();
            line.push_str(&format!("  [{}]", dims.join(", ")));
        }
        if let Some(c) = &self.counterexample {
            line.push_str(&format!("  ({c})"));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = Report::new("demo").param("n", 3).dim("kernel", 2);
        r.fail("m = a b".to_string());
        let j = r.to_json();
        assert!(j.starts_with("{\"check\":\"demo\""));
        assert!(j.contains("\"status\":\"fail\""));
        assert!(j.contains("\"counterexample\":\"m = a b\""));
        assert!(j.contains("\"dims\":{\"kernel\":2}"));
    }

    #[test]
    fn first_counterexample_wins() {
        let mut r = Report::new("demo");
        r.fail("first".into());
        r.fail("second".into());
        assert_eq!(r.counterexample.as_deref(), Some("first"));
    }
}

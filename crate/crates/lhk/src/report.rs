//! Machine-readable verification reports.
//!
//! Reports hold only strings, integers and booleans; object keys are sorted, so a
//! report is a pure function of the command, its inputs and its parameters.

use lhk_core::chain::HomologyProfile;
use serde_json::{json, Map, Value};

use crate::format::Input;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// One check: what was checked, where, the outcome and its evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub name: String,
    pub location: Vec<String>,
    pub verdict: Verdict,
    /// Records that are not required are reported but do not affect the overall verdict.
    pub required: bool,
    pub certificate: Value,
}

impl Record {
    pub fn new(name: &str, location: Vec<String>, ok: bool, certificate: Value) -> Self {
        Record { name: name.to_string(), location, verdict: Verdict::of(ok), required: true, certificate }
    }

    pub fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn required_if(mut self, required: bool) -> Self {
        self.required = required;
        self
    }

    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "location": self.location,
            "verdict": self.verdict.name(),
            "required": self.required,
            "certificate": self.certificate,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub parameters: Map<String, Value>,
    pub summary: Map<String, Value>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: Vec::new(), parameters: Map::new(), summary: Map::new(), records: Vec::new() }
    }

    pub fn input(&mut self, input: &Input) {
        self.inputs.push((input.path.display().to_string(), input.digest.clone()));
    }

    pub fn parameter(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Record>) {
        self.records.extend(rs);
    }

    pub fn overall(&self) -> Verdict {
        Verdict::of(self.records.iter().all(|r| !r.required || r.passes()))
    }

    pub fn passes(&self) -> bool {
        self.overall() == Verdict::Pass
    }

    /// Required records that failed.
    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.required && !r.passes())
    }

    pub fn records_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.name == name)
    }

    pub fn to_value(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|(p, d)| json!({"path": p, "sha256": d})).collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "parameters": self.parameters,
            "summary": self.summary,
            "records": self.records.iter().map(Record::to_value).collect::<Vec<_>>(),
            "overall": self.overall().name(),
        })
    }

    pub fn to_json(&self) -> String {
        canonical_json(&self.to_value())
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn homology_json(h: &HomologyProfile) -> Value {
    let groups: Vec<Value> = h.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(n, g)| json!({"degree": n, "free": g.free, "torsion": g.torsion})).collect();
    json!({"profile": h.describe(), "groups": groups})
}

#[cfg(test)]
mod tests {
    use super::*;
    use lhk_core::complex::corpus;

    #[test]
    fn overall_ignores_optional_records() {
        let mut r = Report::new("test");
        r.push(Record::new("a", vec![], true, json!({})));
        r.push(Record::new("b", vec!["x".into()], false, json!({})).optional());
        assert!(r.passes());
        assert_eq!(r.failures().count(), 0);
        r.push(Record::new("c", vec![], false, json!({})));
        assert_eq!(r.overall(), Verdict::Fail);
        assert_eq!(r.to_value()["overall"], "FAIL");
    }

    #[test]
    fn json_is_sorted_and_float_free() {
        let mut r = Report::new("z");
        r.summarize("zeta", 1);
        r.summarize("alpha", 2);
        let s = r.to_json();
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"overall\"").unwrap());
        assert!(!s.contains('.'));
    }

    #[test]
    fn torus_homology_certificate() {
        let h = homology_json(&corpus::torus().chain_complex().homology());
        assert_eq!(h["profile"], "H0=Z H1=Z^2 H2=Z");
        assert_eq!(h["groups"][1], json!({"degree": 1, "free": 2, "torsion": []}));
    }
}

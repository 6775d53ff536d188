//! Structured pass/fail records shared by every check and the CLI.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

impl Verdict {
    /// Process exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Undetermined => 1,
        }
    }
}

/// One check's outcome. A failing report always carries a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub check: String,
    pub params: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    /// Wall-clock time; left out unless timing was requested so reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl WitnessReport {
    pub fn pass(check: impl Into<String>, params: Value) -> Self {
        WitnessReport {
            check: check.into(),
            params,
            verdict: Verdict::Pass,
            witness: None,
            counts: BTreeMap::new(),
            caveat: None,
            elapsed_ms: None,
        }
    }

    pub fn fail(check: impl Into<String>, params: Value, witness: Value) -> Self {
        WitnessReport {
            verdict: Verdict::Fail,
            witness: Some(witness),
            ..WitnessReport::pass(check, params)
        }
    }

    pub fn undetermined(check: impl Into<String>, params: Value, witness: Value) -> Self {
        WitnessReport {
            verdict: Verdict::Undetermined,
            witness: Some(witness),
            ..WitnessReport::pass(check, params)
        }
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn from_outcome(check: impl Into<String>, params: Value, ok: bool, witness: Value) -> Self {
        if ok {
            WitnessReport::pass(check, params).with_witness(witness)
        } else {
            WitnessReport::fail(check, params, witness)
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_count(mut self, key: impl Into<String>, n: u64) -> Self {
        self.counts.insert(key.into(), n);
        self
    }

    pub fn with_caveat(mut self, caveat: impl Into<String>) -> Self {
        self.caveat = Some(caveat.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fail_carries_witness() {
        let r = WitnessReport::fail("x", json!({}), json!({"i": 1}));
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());
        assert_eq!(r.verdict.exit_code(), 1);
    }

    #[test]
    fn timing_is_omitted_by_default() {
        let r = WitnessReport::pass("x", json!({"a": 1})).with_count("n", 3);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"check":"x","params":{"a":1},"verdict":"pass","counts":{"n":3}}"#
        );
    }
}

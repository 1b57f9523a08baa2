use std::fmt::Write as _;

use capinf_core::Verdict;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Overall outcome, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Unknown,
    Violation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Violation => 1,
            Outcome::Unknown => 3,
        }
    }

    fn of(v: &Verdict) -> Outcome {
        match v {
            Verdict::True => Outcome::Pass,
            Verdict::False => Outcome::Violation,
            Verdict::Unknown { .. } => Outcome::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    /// `true`, `false` or `unknown`.
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl NamedVerdict {
    pub fn new(name: &str, v: &Verdict) -> Self {
        let (value, note) = match v {
            Verdict::True => ("true", None),
            Verdict::False => ("false", None),
            Verdict::Unknown { reason, horizon } => ("unknown", Some(format!("{reason} (horizon {horizon})"))),
        };
        NamedVerdict { name: name.to_string(), value: value.to_string(), note }
    }

    fn outcome(&self) -> Outcome {
        match self.value.as_str() {
            "true" => Outcome::Pass,
            "false" => Outcome::Violation,
            _ => Outcome::Unknown,
        }
    }
}

/// The digested part of a report: everything but timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combinator: Option<String>,
    pub horizon: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of universe points the verdicts are relative to.
    pub relative_to: usize,
    pub verdicts: Vec<NamedVerdict>,
    pub outcome: Outcome,
    pub result: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(flatten)]
    pub body: Body,
    /// SHA-256 of the key-sorted JSON of the body.
    pub digest: String,
    pub elapsed_ms: u64,
}

impl Body {
    pub fn new(command: &str, horizon: u64, relative_to: usize, verdicts: Vec<(&str, Verdict)>, result: Value) -> Body {
        let outcome = verdicts.iter().map(|(_, v)| Outcome::of(v)).max().unwrap_or(Outcome::Pass);
        Body {
            command: command.to_string(),
            combinator: None,
            horizon,
            seed: None,
            relative_to,
            verdicts: verdicts.iter().map(|(n, v)| NamedVerdict::new(n, v)).collect(),
            outcome,
            result,
        }
    }

    /// Canonical form: `serde_json::Value` maps are ordered by key, since
    /// `preserve_order` is off.
    pub fn canonical_json(&self) -> String {
        serde_json::to_value(self).expect("report bodies serialize").to_string()
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn seal(self, elapsed_ms: u64) -> Report {
        Report { digest: self.digest(), body: self, elapsed_ms }
    }

    /// Outcome recomputed from the verdict list.
    pub fn recomputed_outcome(&self) -> Outcome {
        self.verdicts.iter().map(NamedVerdict::outcome).max().unwrap_or(Outcome::Pass)
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let b = &self.body;
        let mut out = String::new();
        let command = match &b.combinator {
            Some(c) => format!("{} ({c})", b.command),
            None => b.command.clone(),
        };
        let _ = writeln!(out, "command      {command}");
        let _ = writeln!(out, "horizon      {}", b.horizon);
        if let Some(seed) = b.seed {
            let _ = writeln!(out, "seed         {seed}");
        }
        let _ = writeln!(out, "relative to  {} point(s)", b.relative_to);
        let _ = writeln!(out);
        let width = b.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(7).max(7);
        let _ = writeln!(out, "{:width$}  value", "verdict");
        let _ = writeln!(out, "{:-<width$}  -------", "");
        for v in &b.verdicts {
            match &v.note {
                Some(note) => {
                    let _ = writeln!(out, "{:width$}  {:7}  {note}", v.name, v.value);
                }
                None => {
                    let _ = writeln!(out, "{:width$}  {}", v.name, v.value);
                }
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "outcome      {}", serde_json::to_value(b.outcome).unwrap().as_str().unwrap());
        let _ = writeln!(out, "digest       {}", self.digest);
        let _ = writeln!(out, "elapsed      {} ms", self.elapsed_ms);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body() -> Body {
        Body::new(
            "classify",
            64,
            1,
            vec![("is_cover", Verdict::True), ("is_gamma", Verdict::unknown("explicit family", 3))],
            serde_json::json!({"b": 1, "a": [2, 3]}),
        )
    }

    #[test]
    fn outcome_is_worst_verdict() {
        assert_eq!(body().outcome, Outcome::Unknown);
        assert_eq!(body().recomputed_outcome(), Outcome::Unknown);
    }

    #[test]
    fn digest_ignores_timing_and_key_order() {
        let a = body().seal(5);
        let b = body().seal(900);
        assert_eq!(a.digest, b.digest);
        assert!(a.body.canonical_json().find("\"a\"").unwrap() < a.body.canonical_json().find("\"b\"").unwrap());
        let parsed: Report = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(parsed.body.digest(), a.digest);
    }

    #[test]
    fn text_lists_each_verdict() {
        let t = body().seal(1).to_text();
        assert!(t.contains("is_cover") && t.contains("unknown  explicit family (horizon 3)"));
    }
}

//! Check records and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    /// The statement being verified.
    pub anchor: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            verdict: Verdict::Pass,
            reason: None,
            detail: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn value(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.detail.push(s.into());
        self
    }

    /// Pass when `ok`, otherwise fail.
    pub fn expect(mut self, ok: bool) -> Self {
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Skip;
        self.reason = Some(reason.into());
        self
    }

    pub fn fail(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Fail;
        self.reason = Some(reason.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub algebra: String,
    pub field: String,
    pub seed: u64,
    pub version: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Report {
    pub fn new(suite: &str, algebra: &str, field: &str, seed: u64) -> Self {
        Report {
            suite: suite.to_string(),
            algebra: algebra.to_string(),
            field: field.to_string(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            notes: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.records {
            match r.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => t.fail += 1,
                Verdict::Skip => t.skip += 1,
            }
        }
        t
    }

    pub fn passed(&self) -> bool {
        self.tally().fail == 0
    }

    pub fn find(&self, check: &str) -> impl Iterator<Item = &CheckRecord> {
        let check = check.to_string();
        self.records.iter().filter(move |r| r.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "liechief {}  suite {}  algebra {} over {}  seed {}",
            self.version, self.suite, self.algebra, self.field, self.seed
        );
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for r in &self.records {
            let _ = write!(out, "{} {}  [{}]", r.verdict.as_str(), r.check, r.anchor);
            for (k, v) in &r.inputs {
                let _ = write!(out, "  {k}={}", plain(v));
            }
            out.push('\n');
            if !r.values.is_empty() {
                let vals: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                let _ = writeln!(out, "  {}", vals.join(" "));
            }
            if let Some(reason) = &r.reason {
                let _ = writeln!(out, "  reason: {reason}");
            }
            for d in &r.detail {
                let _ = writeln!(out, "  {d}");
            }
        }
        let t = self.tally();
        let _ = writeln!(out, "summary: {} pass, {} fail, {} skip", t.pass, t.fail, t.skip);
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

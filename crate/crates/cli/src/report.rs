use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyStatus {
    NotRun,
    Passed,
    Failed,
}

impl VerifyStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyStatus::NotRun => "not-run",
            VerifyStatus::Passed => "passed",
            VerifyStatus::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub status: VerifyStatus,
    pub detail: String,
}

impl Verification {
    pub fn not_requested() -> Self {
        Verification {
            status: VerifyStatus::NotRun,
            detail: "not requested".into(),
        }
    }

    pub fn skipped(why: impl Into<String>) -> Self {
        Verification {
            status: VerifyStatus::NotRun,
            detail: why.into(),
        }
    }

    pub fn check(ok: bool, detail: impl Into<String>) -> Self {
        Verification {
            status: if ok { VerifyStatus::Passed } else { VerifyStatus::Failed },
            detail: detail.into(),
        }
    }
}

/// Wall time is kept out of the report so that identical inputs give
/// byte-identical output; it goes to stderr instead.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub input_sha256: String,
    pub summary: String,
    pub result: serde_json::Value,
    pub verification: Verification,
    #[serde(skip)]
    pub lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(subcommand: &str, inputs: &[&[u8]], headline: String, result: serde_json::Value) -> Self {
        RunReport {
            subcommand: subcommand.into(),
            input_sha256: digest(inputs),
            summary: headline,
            result,
            verification: Verification::not_requested(),
            lines: Vec::new(),
        }
    }

    pub fn line(mut self, key: &str, value: impl Into<String>) -> Self {
        self.lines.push((key.into(), value.into()));
        self
    }

    pub fn verified(mut self, v: Verification) -> Self {
        self.verification = v;
        self
    }

    /// Headline with the verification status appended.
    fn headline(&self) -> String {
        format!("{}, verify: {}", self.summary, self.verification.status.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = self.headline() + "\n";
        for (k, v) in &self.lines {
            let _ = writeln!(s, "{k}: {v}");
        }
        if self.verification.status != VerifyStatus::NotRun || self.verification.detail != "not requested" {
            let _ = writeln!(s, "verify detail: {}", self.verification.detail);
        }
        let _ = writeln!(s, "input sha256: {}", self.input_sha256);
        s
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["summary"] = serde_json::Value::from(self.headline());
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

/// Each input is length-prefixed so that file boundaries matter.
fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

//! Machine-readable check records and run reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One verification outcome. `witness` names the offending (or exhibiting)
/// term; `data` carries the computed values with rationals as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    pub witness: Value,
    pub data: Value,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, ok: bool, witness: Value, data: Value) -> Self {
        CheckRecord { check: check.into(), status: Status::from_bool(ok), witness, data }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub status: Status,
}

impl Report {
    pub fn new(config: Value, records: Vec<CheckRecord>) -> Self {
        let status = Status::from_bool(records.iter().all(CheckRecord::passed));
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            records,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.tool, self.version);
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("[{tag}] {}", r.check));
            if !r.witness.is_null() {
                out.push_str(&format!("  witness: {}", r.witness));
            }
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

//! Check results and the versioned JSON report format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    NeedsHigherDegree,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Combines statuses: any failure wins, then a degree shortfall, then pass.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (NeedsHigherDegree, _) | (_, NeedsHigherDegree) => NeedsHigherDegree,
            (Skipped, s) | (s, Skipped) => s,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check { name: name.into(), params: BTreeMap::new(), status, details: Value::Null }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Converts an error raised while running a check into a failing check.
    pub fn from_error(name: impl Into<String>, err: &crate::Error) -> Self {
        Check::new(name, Status::Fail).details(serde_json::json!({ "error": err.to_string() }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub triple: Vec<String>,
    pub seed: u64,
    pub version: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, triples: Vec<String>, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        Report {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            triple: triples,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            checks,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn any_needs_higher_degree(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::NeedsHigherDegree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

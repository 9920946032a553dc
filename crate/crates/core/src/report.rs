//! Verification records and the JSON report.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Scalar;
use crate::error::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// The first mismatch found by a check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub case: BTreeMap<String, String>,
    pub status: Status,
    pub comparisons: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub truncations: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    /// Sort key: suite, check name, then the case parameters.
    pub fn key(&self) -> String {
        let case: Vec<String> = self.case.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}/{}/{}", self.suite, self.check, case.join(","))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates comparisons for one case and produces a [`CheckRecord`].
#[derive(Debug)]
pub struct Checker {
    rec: CheckRecord,
    inconclusive: Option<String>,
}

impl Checker {
    pub fn new(suite: &str, check: &str) -> Checker {
        Checker {
            rec: CheckRecord {
                suite: suite.to_string(),
                check: check.to_string(),
                case: BTreeMap::new(),
                status: Status::Pass,
                comparisons: 0,
                failures: 0,
                witness: None,
                truncations: BTreeMap::new(),
                assumptions: Vec::new(),
                notes: Vec::new(),
            },
            inconclusive: None,
        }
    }

    pub fn case(mut self, key: &str, value: impl Display) -> Checker {
        self.rec.case.insert(key.to_string(), value.to_string());
        self
    }

    pub fn truncation(&mut self, key: &str, value: i64) {
        self.rec.truncations.insert(key.to_string(), value);
    }

    pub fn assume(&mut self, what: &str) {
        if !self.rec.assumptions.iter().any(|a| a == what) {
            self.rec.assumptions.push(what.to_string());
        }
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.rec.notes.push(what.into());
    }

    pub fn failures(&self) -> u64 {
        self.rec.failures
    }

    /// Compares two scalars; `location` is only rendered on failure.
    pub fn eq<S: Scalar>(&mut self, location: impl FnOnce() -> String, expected: &S, actual: &S) -> bool {
        self.rec.comparisons += 1;
        if (expected.clone() - actual.clone()).is_zero() {
            return true;
        }
        self.record_failure(location(), expected.to_json(), actual.to_json());
        false
    }

    /// Records a boolean condition.
    pub fn holds(&mut self, location: impl FnOnce() -> String, ok: bool) -> bool {
        self.rec.comparisons += 1;
        if !ok {
            self.record_failure(location(), Value::Bool(true), Value::Bool(false));
        }
        ok
    }

    pub fn fail(&mut self, location: impl Into<String>, expected: Value, actual: Value) {
        self.rec.comparisons += 1;
        self.record_failure(location.into(), expected, actual);
    }

    /// A computation that raised an error counts as a failure.
    pub fn error(&mut self, location: impl Into<String>, err: &Error) {
        self.fail(location, Value::String("no error".into()), Value::String(err.to_string()));
    }

    pub fn inconclusive(&mut self, why: impl Into<String>) {
        self.inconclusive.get_or_insert(why.into());
    }

    fn record_failure(&mut self, location: String, expected: Value, actual: Value) {
        self.rec.failures += 1;
        if self.rec.witness.is_none() {
            self.rec.witness = Some(Witness {
                location,
                expected,
                actual,
            });
        }
    }

    pub fn finish(mut self) -> CheckRecord {
        self.rec.status = if self.rec.failures > 0 {
            Status::Fail
        } else if let Some(why) = self.inconclusive.take() {
            self.rec.notes.push(format!("inconclusive: {why}"));
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self.rec
    }
}

/// Counts per status.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub config: Value,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
}

impl Report {
    /// Sorts records by key so the output does not depend on execution order.
    pub fn new(config: Value, mut records: Vec<CheckRecord>) -> Report {
        records.sort_by_cached_key(CheckRecord::key);
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary,
            records,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn checker_keeps_first_witness() {
        let mut c = Checker::new("demo", "eq").case("N", 2);
        assert!(c.eq(|| "a".into(), &int(1), &int(1)));
        assert!(!c.eq(|| "b".into(), &int(1), &int(2)));
        assert!(!c.eq(|| "c".into(), &int(3), &int(2)));
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures, 2);
        assert_eq!(r.witness.unwrap().location, "b");
    }

    #[test]
    fn inconclusive_does_not_mask_failure() {
        let mut c = Checker::new("demo", "x");
        c.inconclusive("no data");
        assert_eq!(c.finish().status, Status::Inconclusive);
    }
}

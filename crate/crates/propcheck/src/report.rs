//! Check reports and the tallies that build them.
//!
//! A suite is made of sub-checks with their own tolerances. The suite's
//! `max_violation` is the largest sub-check violation rescaled to the suite
//! tolerance, so `passed ⇔ max_violation ≤ tolerance` holds at both levels.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Witness seeds kept per report.
pub const MAX_WITNESSES: usize = 32;
/// Notes kept per report.
const MAX_NOTES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub instances: usize,
    /// Largest violation seen; non-finite violations are reported as `f64::MAX`.
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Seeds of the instances that exceeded the tolerance (first 32).
    pub witnesses: Vec<u64>,
    /// Comparisons outside the validity range of the law being checked.
    #[serde(default)]
    pub skipped: usize,
    /// Instances dropped because an inner computation failed. They are
    /// recorded with their seeds but do not enter `max_violation`.
    #[serde(default)]
    pub errors: usize,
    /// Recorded for information; does not affect `passed` of the parent.
    #[serde(default, skip_serializing_if = "is_false")]
    pub record_only: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_checks: Vec<CheckReport>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl CheckReport {
    /// Suite report over sub-checks. Record-only sub-checks are kept but do
    /// not enter the verdict.
    pub fn combine(
        suite: &str,
        tolerance: f64,
        instances: usize,
        sub_checks: Vec<CheckReport>,
        notes: Vec<String>,
    ) -> Self {
        let mut max_violation: f64 = 0.0;
        let mut witnesses = BTreeSet::new();
        let (mut skipped, mut errors) = (0, 0);
        for sub in &sub_checks {
            skipped += sub.skipped;
            if sub.record_only {
                continue;
            }
            errors += sub.errors;
            let scaled = sub.max_violation * (tolerance / sub.tolerance);
            max_violation = max_violation.max(finite_or_max(scaled));
            witnesses.extend(sub.witnesses.iter().copied());
        }
        Self {
            suite: suite.to_string(),
            instances,
            max_violation,
            tolerance,
            passed: max_violation <= tolerance,
            witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
            skipped,
            errors,
            record_only: false,
            notes,
            sub_checks,
        }
    }

    /// Reports in this tree that fail, by name.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.passed && !self.record_only {
            out.push(self.suite.clone());
        }
        for s in &self.sub_checks {
            if !s.record_only {
                out.extend(s.failures());
            }
        }
        out
    }

    /// Finds this report or a sub-check by name.
    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        if self.suite == name {
            return Some(self);
        }
        self.sub_checks.iter().find_map(|s| s.find(name))
    }
}

fn finite_or_max(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

/// Accumulates comparisons for one sub-check.
#[derive(Clone, Debug)]
pub struct Tally {
    name: String,
    tolerance: f64,
    instances: usize,
    max_violation: f64,
    witnesses: BTreeSet<u64>,
    skipped: usize,
    errors: usize,
    record_only: bool,
    notes: Vec<String>,
}

impl Tally {
    pub fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            tolerance,
            instances: 0,
            max_violation: 0.0,
            witnesses: BTreeSet::new(),
            skipped: 0,
            errors: 0,
            record_only: false,
            notes: Vec::new(),
        }
    }

    pub fn record_only(mut self) -> Self {
        self.record_only = true;
        self
    }

    /// Records one comparison. A NaN violation counts as a failure.
    pub fn check(&mut self, seed: u64, violation: f64) {
        self.instances += 1;
        let v = if violation.is_nan() {
            f64::MAX
        } else {
            finite_or_max(violation)
        };
        if v > self.max_violation {
            self.max_violation = v;
        }
        if v > self.tolerance {
            self.witnesses.insert(seed);
        }
    }

    /// Violation of `lhs ≤ rhs`.
    pub fn at_most(&mut self, seed: u64, lhs: f64, rhs: f64) {
        self.check(seed, excess(lhs, rhs));
    }

    /// Violation of `|a − b| ≤ tol`.
    pub fn close(&mut self, seed: u64, a: f64, b: f64) {
        let d = if a == b { 0.0 } else { (a - b).abs() };
        self.check(seed, d);
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn error(&mut self, seed: u64, err: &qexp_core::Error) {
        self.errors += 1;
        self.witnesses.insert(seed);
        self.note(format!("seed {seed}: {err}"));
    }

    pub fn note(&mut self, text: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(text);
        }
    }

    pub fn instances(&self) -> usize {
        self.instances
    }

    pub fn finish(self) -> CheckReport {
        let max_violation = self.max_violation;
        CheckReport {
            suite: self.name,
            instances: self.instances,
            max_violation,
            tolerance: self.tolerance,
            passed: max_violation <= self.tolerance,
            witnesses: self.witnesses.into_iter().take(MAX_WITNESSES).collect(),
            skipped: self.skipped,
            errors: self.errors,
            record_only: self.record_only,
            notes: self.notes,
            sub_checks: Vec::new(),
        }
    }
}

/// `max(0, lhs − rhs)`, with `+∞ ≤ +∞` counted as satisfied.
pub fn excess(lhs: f64, rhs: f64) -> f64 {
    if lhs <= rhs {
        0.0
    } else {
        lhs - rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_the_tolerance() {
        let mut t = Tally::new("a", 1e-3);
        t.check(1, 5e-4);
        t.check(2, 2e-3);
        t.at_most(3, 1.0, 2.0);
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!(r.witnesses, vec![2]);
        assert_eq!(r.instances, 3);
        assert_eq!(r.max_violation, 2e-3);
    }

    #[test]
    fn combine_rescales_sub_checks() {
        let mut a = Tally::new("a", 1e-3);
        a.check(1, 5e-4);
        let mut b = Tally::new("b", 1e-9);
        b.check(2, 2e-9);
        let mut c = Tally::new("c", 1e-9).record_only();
        c.check(3, 1.0);
        let r = CheckReport::combine("s", 1e-9, 2, vec![a.finish(), b.finish(), c.finish()], vec![]);
        assert!(!r.passed);
        assert!((r.max_violation - 2e-9).abs() < 1e-20);
        assert_eq!(r.witnesses, vec![2]);
        assert_eq!(r.failures(), vec!["s".to_string(), "b".to_string()]);
    }

    #[test]
    fn infinite_comparisons() {
        assert_eq!(excess(f64::INFINITY, f64::INFINITY), 0.0);
        let mut t = Tally::new("a", 1.0);
        t.check(7, f64::NAN);
        let r = t.finish();
        assert_eq!(r.max_violation, f64::MAX);
        let json: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(json["max_violation"].as_f64(), Some(f64::MAX));
    }
}

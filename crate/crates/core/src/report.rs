//! Pass/fail results of identity checks, with witnesses for failures.

use serde::Serialize;

use crate::exact_linalg::{format_vec, Rat};

/// Witnesses beyond this count are counted but not stored.
pub const MAX_WITNESSES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub tuple: Vec<String>,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn record_pass(&mut self) {
        self.checked += 1;
    }

    pub fn record_fail(&mut self, identity: &str, tuple: Vec<String>, residual: &[Rat]) {
        self.checked += 1;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { identity: identity.to_string(), tuple, residual: format_vec(residual) });
        }
    }

    /// Records a check of `residual == 0`.
    pub fn expect_zero(&mut self, identity: &str, tuple: impl FnOnce() -> Vec<String>, residual: &[Rat]) {
        if residual.iter().all(num::Zero::is_zero) {
            self.record_pass();
        } else {
            self.record_fail(identity, tuple(), residual);
        }
    }

    /// Records a check of `lhs == rhs`.
    pub fn expect_eq(&mut self, identity: &str, tuple: impl FnOnce() -> Vec<String>, lhs: &[Rat], rhs: &[Rat]) {
        if lhs == rhs {
            self.record_pass();
        } else {
            let residual: Vec<Rat> = lhs.iter().zip(rhs).map(|(a, b)| a - b).collect();
            self.record_fail(identity, tuple(), &residual);
        }
    }

    pub fn expect_true(&mut self, identity: &str, tuple: impl FnOnce() -> Vec<String>, ok: bool) {
        if ok {
            self.record_pass();
        } else {
            self.record_fail(identity, tuple(), &[]);
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
    }

    pub fn first_identity(&self) -> Option<&str> {
        self.witnesses.first().map(|w| w.identity.as_str())
    }

    pub fn has_identity(&self, identity: &str) -> bool {
        self.witnesses.iter().any(|w| w.identity == identity)
    }
}

/// Labels for basis tuples in witnesses, e.g. `["x0", "y2"]`.
pub fn labels(prefixes: &[(&str, usize)]) -> Vec<String> {
    prefixes.iter().map(|(p, i)| format!("{p}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    #[test]
    fn failures_carry_witnesses() {
        let mut r = CheckReport::new();
        r.expect_zero("zero", Vec::new, &[int(0)]);
        assert!(r.passed());
        r.expect_eq("eq", || vec!["e0".into()], &[int(1)], &[int(3)]);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].residual, vec!["-2".to_string()]);
        assert_eq!(r.checked, 2);
    }

    #[test]
    fn witness_cap() {
        let mut r = CheckReport::new();
        for _ in 0..(MAX_WITNESSES + 5) {
            r.expect_true("t", Vec::new, false);
        }
        assert_eq!(r.failures, MAX_WITNESSES + 5);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
    }
}

//! Pass/fail reports shared by every validator.
//!
//! A [`Report`] is a list of named checks. Identity checks scan basis tuples in
//! a fixed order and record the first tuple whose residual is nonzero, so a
//! failing report always carries a concrete witness.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::linalg::{format_rational, format_vec, is_zero_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// The first basis tuple at which an identity fails, with its residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<String>,
    #[serde(serialize_with = "serialize_rationals")]
    pub residual: Vec<Rational>,
}

pub(crate) fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// Basis label helpers: `e` for the algebra, `a` for the base ring, `m` for a module.
pub(crate) fn e(i: usize) -> String {
    format!("e{i}")
}

pub(crate) fn a(i: usize) -> String {
    format!("a{i}")
}

pub(crate) fn m(i: usize) -> String {
    format!("m{i}")
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witness: None, detail: None }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), passed, witness: None, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " at ({}): residual {}", w.tuple.join(", "), format_vec(&w.residual))?;
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Verdict of the named check; panics if there is no such check.
    pub fn verdict(&self, name: &str) -> bool {
        self.check(name).unwrap_or_else(|| panic!("no check named {name:?} in report {:?}", self.subject)).passed
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn flag(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.checks.push(Check::flag(name, passed, detail));
        passed
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records an identity check: the first case with a nonzero residual
    /// becomes the witness. Returns the verdict.
    pub fn scan<I>(&mut self, name: impl Into<String>, cases: I) -> bool
    where
        I: IntoIterator<Item = (Vec<String>, Vec<Rational>)>,
    {
        let witness = cases
            .into_iter()
            .find(|(_, r)| !is_zero_vec(r))
            .map(|(tuple, residual)| Witness { tuple, residual });
        let passed = witness.is_none();
        self.checks.push(Check { name: name.into(), passed, witness, detail: None });
        passed
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.passed() { "ok" } else { "FAILED" })?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn scan_keeps_first_violation() {
        let mut r = Report::new("t");
        let cases = vec![
            (vec![e(0)], vec![q(0)]),
            (vec![e(1)], vec![q(2)]),
            (vec![e(2)], vec![q(3)]),
        ];
        assert!(!r.scan("identity", cases));
        let c = r.check("identity").unwrap();
        assert_eq!(c.witness.as_ref().unwrap().tuple, vec!["e1".to_string()]);
        assert_eq!(c.to_string(), "FAIL identity at (e1): residual (2)");
    }
}

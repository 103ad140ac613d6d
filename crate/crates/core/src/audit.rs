//! Outcome records shared by every checker.
//!
//! An [`Audit`] counts checked cases, keeps a bounded list of failure
//! witnesses, and separately collects *findings*: deviations from an
//! expectation that are reported but do not count as failures.

use std::fmt;

const MAX_WITNESSES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub detail: String,
}

impl Witness {
    pub fn new(check: impl Into<String>, detail: impl Into<String>) -> Witness {
        Witness {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Audit {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<Witness>,
    pub found: u64,
    pub findings: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Audit {
    pub fn new(name: impl Into<String>) -> Audit {
        Audit {
            name: name.into(),
            ..Audit::default()
        }
    }

    /// Records one checked case; `detail` is only rendered on failure.
    pub fn check(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.record_failure(Witness::new(check, detail()));
        }
        ok
    }

    pub fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.checked += 1;
        self.record_failure(Witness::new(check, detail));
    }

    fn record_failure(&mut self, w: Witness) {
        self.failed += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(w);
        }
    }

    pub fn finding(&mut self, check: &str, detail: impl Into<String>) {
        self.found += 1;
        if self.findings.len() < MAX_WITNESSES {
            self.findings.push(Witness::new(check, detail));
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Folds `other` into `self`, keeping the witness caps.
    pub fn absorb(&mut self, other: Audit) {
        self.checked += other.checked;
        self.failed += other.failed;
        self.found += other.found;
        for w in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(w);
            }
        }
        for w in other.findings {
            if self.findings.len() < MAX_WITNESSES {
                self.findings.push(w);
            }
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Audit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} failed, {} findings",
            self.name, self.checked, self.failed, self.found
        )?;
        for w in &self.failures {
            write!(f, "\n  FAIL {w}")?;
        }
        for w in &self.findings {
            write!(f, "\n  FINDING {w}")?;
        }
        Ok(())
    }
}

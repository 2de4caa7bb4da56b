//! Structured pass/fail reports returned by the validators.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Failing instance, when there is one.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// What was validated, e.g. `semifield`.
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport {
            subject: subject.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `PASS semifield axioms=14/14`.
    pub fn summary(&self) -> String {
        format!(
            "{} {} axioms={}/{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.subject,
            self.pass_count(),
            self.checks.len()
        )
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  ok   {}", c.name)?,
                Some(w) => writeln!(f, "  FAIL {} witness={w}", c.name)?,
            }
        }
        for n in &self.notes {
            writeln!(f, "  note {n}")?;
        }
        Ok(())
    }
}

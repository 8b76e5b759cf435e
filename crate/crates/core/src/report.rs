use std::fmt;

/// One failed clause of a verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

/// Outcome of a verifier: the list of checks that ran and every violation
/// found. Violations are data, never errors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    checks: Vec<&'static str>,
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a check so it shows up in the rendered report even when it
    /// passes.
    pub fn check(&mut self, name: &'static str) {
        if !self.checks.contains(&name) {
            self.checks.push(name);
        }
    }

    pub fn fail(&mut self, check: &'static str, detail: impl Into<String>) {
        self.check(check);
        self.violations.push(Violation { check, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.check) {
                out.push(v.check);
            }
        }
        out
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.check(c);
        }
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.checks {
            let bad: Vec<&Violation> = self.violations.iter().filter(|v| v.check == c).collect();
            if bad.is_empty() {
                writeln!(f, "{c}: ok")?;
            } else {
                writeln!(f, "{c}: FAIL ({})", bad.len())?;
                for v in bad {
                    writeln!(f, "  {}", v.detail)?;
                }
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

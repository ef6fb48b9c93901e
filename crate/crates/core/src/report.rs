use serde::Serialize;

/// Outcome of an identity sweep: how many individual checks ran and a
/// human-readable line for each one that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: u64,
    pub mismatches: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            ..Self::default()
        }
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        self.mismatches.extend(
            other
                .mismatches
                .into_iter()
                .map(|m| format!("{}: {m}", other.suite)),
        );
    }
}

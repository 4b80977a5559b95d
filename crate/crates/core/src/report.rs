use serde::{Deserialize, Serialize};

/// Outcome of a verification pass: how many checks ran and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: u64,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one check; `detail` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.violations.push(detail());
        }
        ok
    }

    pub fn fail(&mut self, detail: impl Into<String>) {
        self.checks += 1;
        self.violations.push(detail.into());
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }
}

//! Verification reports for batch identity checks.

use std::fmt;

const MAX_RECORDED_FAILURES: usize = 16;

/// Outcome of sweeping an exact check over an index range.
///
/// Failure messages are capped; `failures` always reflects the true count.
#[derive(Debug, Clone)]
pub struct Report {
    name: String,
    checked: u64,
    failures: u64,
    messages: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            checked: 0,
            failures: 0,
            messages: Vec::new(),
        }
    }

    /// Folds per-index outcomes (`None` = pass) in index order.
    pub fn from_outcomes(
        name: impl Into<String>,
        outcomes: impl IntoIterator<Item = Option<String>>,
    ) -> Self {
        let mut report = Self::new(name);
        for outcome in outcomes {
            report.record(outcome);
        }
        report
    }

    pub fn record(&mut self, outcome: Option<String>) {
        self.checked += 1;
        if let Some(message) = outcome {
            self.failures += 1;
            if self.messages.len() < MAX_RECORDED_FAILURES {
                self.messages.push(message);
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} checks passed",
            self.name,
            self.checked - self.failures,
            self.checked
        )?;
        for message in &self.messages {
            write!(f, "\n  failure: {}", message)?;
        }
        if self.failures as usize > self.messages.len() {
            write!(
                f,
                "\n  ... and {} more",
                self.failures as usize - self.messages.len()
            )?;
        }
        Ok(())
    }
}

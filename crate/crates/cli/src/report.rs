//! Deterministic suite reports: one line per check, witnesses on failure,
//! wall time per check unless suppressed.

use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report {
            suite: suite.into(),
            lines: Vec::new(),
        }
    }

    /// Runs one named check; an Err is recorded as a failure with the error
    /// text as witness.
    pub fn check<F>(&mut self, id: impl Into<String>, f: F)
    where
        F: FnOnce() -> Result<(bool, String), sct_core::Error>,
    {
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, e.to_string()),
        };
        self.lines.push(CheckLine {
            id: id.into(),
            pass,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {}\n", self.suite));
        for l in &self.lines {
            let status = if l.pass { "pass" } else { "FAIL" };
            let time = if timings {
                format!("  ({} ms)", l.millis)
            } else {
                String::new()
            };
            if l.detail.is_empty() {
                out.push_str(&format!("{status}  {}{time}\n", l.id));
            } else {
                out.push_str(&format!("{status}  {}: {}{time}\n", l.id, l.detail));
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict} {}/{} checks\n",
            self.lines.iter().filter(|l| l.pass).count(),
            self.lines.len()
        ));
        out
    }
}

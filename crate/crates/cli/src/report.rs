//! Verification report: JSON file plus a terminal table.

use hypcascade::verify::{CheckReport, SuiteOptions};
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format_version: u32,
    pub suite: String,
    pub options: SuiteOptions,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn new(suite: &str, options: SuiteOptions, checks: Vec<CheckReport>) -> Self {
        Self {
            format_version: REPORT_VERSION,
            suite: suite.to_string(),
            options,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = format!("{:<width$}  {:>12}  {:>9}  result\n", "check", "residual", "tolerance");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>12.4e}  {:>9.1e}  {}\n",
                c.name,
                c.max_residual,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

//! Pass/fail records produced by the verification routines.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

impl CaseResult {
    /// Passes iff the two renderings agree.
    pub fn compare(id: String, expected: String, actual: String) -> Self {
        CaseResult {
            pass: expected == actual,
            id,
            expected,
            actual,
        }
    }

    pub fn check(id: String, pass: bool, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        CaseResult {
            id,
            pass,
            expected: expected.into(),
            actual: actual.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    /// Not serialized so JSON output stays byte-deterministic.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!(
            "{}: {} cases, {} passed, {} failed",
            self.suite,
            self.cases.len(),
            self.cases.len() - failed,
            failed
        )
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}", c.id)?;
            if !c.pass {
                writeln!(f, "     expected: {}", c.expected)?;
                writeln!(f, "     actual:   {}", c.actual)?;
            }
        }
        write!(f, "{}", self.summary())
    }
}

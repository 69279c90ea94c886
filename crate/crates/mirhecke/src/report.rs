//! Machine-readable verification reports. Every suite produces a `Report`
//! with one entry per checked assertion; the JSON layout is stable so two runs
//! with the same configuration are byte-identical apart from `elapsed_ms`.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub id: String,
    pub reference: String,
    pub status: String,
    pub detail: String,
}

impl Assertion {
    pub fn new(
        id: impl Into<String>,
        reference: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        Assertion {
            id: id.into(),
            reference: reference.into(),
            status: if pass { "pass" } else { "fail" }.to_string(),
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: serde_json::Value,
    pub assertions: Vec<Assertion>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(
        suite: impl Into<String>,
        params: serde_json::Value,
        assertions: Vec<Assertion>,
    ) -> Self {
        let passed = assertions.iter().filter(|a| a.passed()).count();
        let total = assertions.len();
        Report {
            suite: suite.into(),
            params,
            assertions,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
            elapsed_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

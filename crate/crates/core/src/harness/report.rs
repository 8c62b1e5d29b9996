use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::qseries::{BivariateSeries, Series};

/// Mismatches beyond this many are counted but not listed.
pub const MAX_LISTED_MISMATCHES: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Where a mismatch was found: a q-exponent, an `[x, q]` pair, or a named
/// witness such as a partition `mu1/mu2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Location {
    Exponent(usize),
    Bivariate([usize; 2]),
    Witness(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Exponent(e) => write!(f, "q^{e}"),
            Location::Bivariate([x, q]) => write!(f, "x^{x} q^{q}"),
            Location::Witness(w) => f.write_str(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub location: Location,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub context: Option<String>,
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            mismatches: Vec::new(),
            counts: BTreeMap::new(),
            series: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn count(&mut self, key: &str, n: u64) -> &mut Self {
        self.counts.insert(key.to_string(), n);
        self
    }

    pub fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    pub fn push(
        &mut self,
        location: Location,
        expected: impl Into<Value>,
        actual: impl Into<Value>,
        context: &str,
    ) {
        self.status = Status::Fail;
        self.bump("mismatches_total");
        if self.mismatches.len() < MAX_LISTED_MISMATCHES {
            self.mismatches.push(Mismatch {
                location,
                expected: expected.into(),
                actual: actual.into(),
                context: (!context.is_empty()).then(|| context.to_string()),
            });
        }
    }

    /// Records every differing coefficient of `actual` against `expected`.
    pub fn compare(&mut self, context: &str, expected: &Series, actual: &Series) {
        for (e, want, got) in expected.mismatches(actual) {
            self.push(Location::Exponent(e), want, got, context);
        }
    }

    pub fn compare_bivariate(&mut self, context: &str, expected: &BivariateSeries, actual: &BivariateSeries) {
        for (x, q, want, got) in expected.mismatches(actual) {
            self.push(Location::Bivariate([x, q]), want, got, context);
        }
    }

    /// Recomputes the status from the mismatch list.
    pub fn finish(mut self) -> Self {
        self.status = if self.counts.get("mismatches_total").copied().unwrap_or(0) == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        self
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub fn summary_line(&self) -> String {
        let mut line = format!("{:<12} {}", self.check, self.status);
        if let Some(m) = self.first_mismatch() {
            line.push_str(&format!(
                "  first mismatch at {}: expected {}, got {}",
                m.location, m.expected, m.actual
            ));
            if let Some(c) = &m.context {
                line.push_str(&format!(" ({c})"));
            }
        }
        line
    }
}

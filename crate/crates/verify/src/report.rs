//! Machine-readable results and the human summary.

use std::fmt;

use serde::Serialize;

use crate::catalog::Tier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    /// Exact tiers hold; residuals exceed the tolerance but sit at the
    /// working-precision floor.
    Warn,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// Residuals in scientific notation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualSummary {
    pub count: usize,
    pub max: String,
    pub mean: String,
}

impl ResidualSummary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let max = values.iter().copied().fold(0.0, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Some(ResidualSummary { count: values.len(), max: sci(max), mean: sci(mean) })
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub tier: Tier,
    pub status: Status,
    pub diagnostic: bool,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose exact tier failed; absent for purely numeric checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualSummary>,
    pub tolerance: String,
    /// λ with lhs = λ·rhs in every trial, when the check compares two sides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_slack: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckReport {
    pub fn max_residual(&self) -> Option<f64> {
        self.residuals.as_ref().and_then(|r| r.max.parse().ok())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub warn: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub precision_digits: u32,
    pub tolerance: String,
    pub vars: usize,
    pub coeff_bound: i64,
    /// Numeric tiers are randomized evidence for equalities in quotient groups.
    pub numeric_tier: &'static str,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

pub const NUMERIC_TIER_NOTE: &str = "randomized specializations of D2 or H realizations; probabilistic evidence, not proof";

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Drops wall-clock fields so that reports compare byte for byte.
    pub fn without_timings(mut self) -> Self {
        self.runtime_ms = None;
        for c in &mut self.checks {
            c.runtime_ms = None;
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn summarize(checks: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Warn => s.warn += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {:<28} {:>4} trials", self.status, self.id, self.trials)?;
        if let Some(n) = self.exact_failures {
            write!(f, "  exact {}/{}", self.trials - n, self.trials)?;
        }
        if let Some(r) = &self.residuals {
            write!(f, "  max residual {} (tol {})", r.max, self.tolerance)?;
        }
        if let Some(s) = &self.scalar_slack {
            write!(f, "  ratio {s}")?;
        }
        if let Some(ms) = self.runtime_ms {
            write!(f, "  {ms} ms")?;
        }
        if self.diagnostic {
            write!(f, "  [diagnostic]")?;
        }
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let s = &self.summary;
        write!(f, "{} passed, {} warned, {} failed, {} errors", s.pass, s.warn, s.fail, s.error)?;
        if let Some(ms) = self.runtime_ms {
            write!(f, " in {:.1} s", ms as f64 / 1000.0)?;
        }
        Ok(())
    }
}

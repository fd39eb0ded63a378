//! Pass/fail records produced by the oracle.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured < threshold`.
    pub fn below(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            passed: measured < threshold,
        }
    }

    /// Passes when `measured > threshold` (negative controls).
    pub fn above(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            passed: measured > threshold,
        }
    }

    /// Exact comparison of counts; `measured` is the absolute difference.
    pub fn equal(name: impl Into<String>, found: usize, expected: usize) -> Self {
        Self {
            name: format!("{} ({found} vs {expected})", name.into()),
            measured: found.abs_diff(expected) as f64,
            threshold: 0.0,
            passed: found == expected,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            measured: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            passed: ok,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            seed: None,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest measured value among checks of the `below` kind.
    pub fn worst(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.threshold > 0.0)
            .map(|c| c.measured)
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{}\n", self.title);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        out.push_str(&format!("{:<width$}  {:>10}  {:>10}  result\n", "check", "measured", "threshold"));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>10.3e}  {:>10.3e}  {}\n",
                c.name,
                c.measured,
                c.threshold,
                if c.passed { "ok" } else { "FAIL" }
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_json() {
        let mut r = Report::new("demo");
        r.push(Check::below("residual", 1e-14, 1e-12));
        r.push(Check::equal("dim", 3, 4));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_table().contains("FAIL"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["passed"], true);
    }
}

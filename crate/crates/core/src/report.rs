//! Machine-readable run reports: JSON, CSV and plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One checked item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub label: String,
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    /// Set for exact comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    /// Set for numeric comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_tol: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recognized: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub passed: bool,
}

impl ReportItem {
    pub fn exact(label: impl Into<String>, params: Value, n: Option<u64>, lhs: String, rhs: String, equal: bool) -> Self {
        ReportItem {
            label: label.into(),
            params,
            n,
            lhs,
            rhs,
            equal: Some(equal),
            within_tol: None,
            difference: None,
            budget: None,
            recognized: None,
            elapsed_ms: None,
            passed: equal,
        }
    }

    pub fn numeric(check: &crate::numeric::NumericCheck, params: Value) -> Self {
        let recognized = check.recognized.as_ref().map(|r| match r {
            Some(q) => q.to_string(),
            None => "unrecognized".to_string(),
        });
        ReportItem {
            label: check.label.clone(),
            params,
            n: None,
            lhs: format!("{} = {}", check.lhs, check.lhs_value),
            rhs: format!("{} = {}", check.rhs, check.rhs_value),
            equal: None,
            within_tol: Some(check.within_tol),
            difference: Some(check.difference),
            budget: Some(check.budget),
            recognized,
            elapsed_ms: None,
            passed: check.passed(),
        }
    }

    pub fn with_elapsed(mut self, elapsed_ms: Option<f64>) -> Self {
        self.elapsed_ms = elapsed_ms;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    label: &'a str,
    params: String,
    n: Option<u64>,
    lhs: &'a str,
    rhs: &'a str,
    equal: Option<bool>,
    within_tol: Option<bool>,
    difference: Option<f64>,
    budget: Option<f64>,
    recognized: Option<&'a str>,
    elapsed_ms: Option<f64>,
    passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value, items: Vec<ReportItem>) -> Self {
        let passed = items.iter().filter(|i| i.passed).count();
        let summary = Summary {
            total: items.len(),
            passed,
            failed: items.len() - passed,
            all_passed: passed == items.len(),
        };
        Report { command: command.into(), config, items, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.all_passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for item in &self.items {
            writer
                .serialize(CsvRow {
                    label: &item.label,
                    params: item.params.to_string(),
                    n: item.n,
                    lhs: &item.lhs,
                    rhs: &item.rhs,
                    equal: item.equal,
                    within_tol: item.within_tol,
                    difference: item.difference,
                    budget: item.budget,
                    recognized: item.recognized.as_deref(),
                    elapsed_ms: item.elapsed_ms,
                    passed: item.passed,
                })
                .expect("csv row serializes");
        }
        String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {}", item.label);
            if let Some(n) = item.n {
                let _ = write!(out, " n={n}");
            }
            if let (Some(d), Some(b)) = (item.difference, item.budget) {
                let _ = write!(out, " |lhs-rhs|={d:.3e} budget={b:.3e}");
            }
            if let Some(r) = &item.recognized {
                let _ = write!(out, " value={r}");
            }
            if !item.passed {
                let _ = write!(out, "\n    lhs: {}\n    rhs: {}", item.lhs, item.rhs);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {}/{} passed",
            self.command, self.summary.passed, self.summary.total
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let a = ReportItem::exact("two-one", json!({"a": [1]}), Some(3), "49/36".into(), "49/36".into(), true)
            .with_elapsed(Some(0.25));
        let mut b = ReportItem::exact("c21", json!({"c": [3]}), Some(1), "1".into(), "2".into(), false);
        b.difference = Some(1.0 / 3.0);
        Report::new("verify", json!({"tol": 1e-6, "format": "json"}), vec![a, b])
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1, all_passed: false });
        assert!(Report::new("x", Value::Null, vec![]).all_passed());
    }

    #[test]
    fn json_round_trips_byte_for_byte() {
        let text = sample().to_json();
        let parsed = Report::from_json(&text).unwrap();
        assert_eq!(parsed, sample());
        assert_eq!(parsed.to_json(), text);
        assert!(!text.contains("within_tol"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("label,params,n,lhs,rhs,equal,within_tol"));
        assert!(lines[2].ends_with(",false"));
    }

    #[test]
    fn text_lists_failures_with_sides() {
        let text = sample().to_text();
        assert!(text.contains("PASS two-one n=3"));
        assert!(text.contains("FAIL c21 n=1"));
        assert!(text.contains("verify: 1/2 passed"));
    }
}

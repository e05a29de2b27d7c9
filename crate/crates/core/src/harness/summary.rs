use super::{read_manifest, HarnessError};
use serde::{Deserialize, Serialize};
use std::path::Path;

const EXPECTATIONS: &str = include_str!("../../expectations.json");

/// A pre-registered bound on one metric. `cell`, when set, restricts the
/// bound to metrics from that cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub scenario: String,
    pub metric: String,
    #[serde(default)]
    pub cell: Option<String>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default)]
    pub lt: Option<f64>,
}

impl Expectation {
    pub fn holds(&self, v: f64) -> bool {
        !v.is_nan()
            && self.min.is_none_or(|m| v >= m)
            && self.max.is_none_or(|m| v <= m)
            && self.lt.is_none_or(|m| v < m)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(m) = self.min {
            parts.push(format!(">= {m}"));
        }
        if let Some(m) = self.max {
            parts.push(format!("<= {m}"));
        }
        if let Some(m) = self.lt {
            parts.push(format!("< {m}"));
        }
        parts.join(" and ")
    }

    fn applies(&self, scenario: &str, metric: &str, cell: &str) -> bool {
        self.scenario == scenario && self.metric == metric && self.cell.as_deref().is_none_or(|c| c == cell)
    }
}

#[derive(Deserialize)]
struct ExpectationsFile {
    version: u32,
    expectations: Vec<Expectation>,
}

/// The versioned expectations compiled into this build.
pub fn expectations() -> (u32, Vec<Expectation>) {
    let f: ExpectationsFile = serde_json::from_str(EXPECTATIONS).expect("embedded expectations parse");
    (f.version, f.expectations)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scenario: String,
    pub metric: String,
    pub cell: String,
    pub value: f64,
    pub expectation: Option<String>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub expectations_version: u32,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(|r| r.pass == Some(false))
    }

    pub fn render(&self) -> String {
        let mut s = String::from("scenario,metric,cell,value,expectation,status\n");
        for r in &self.rows {
            let status = match r.pass {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "info",
            };
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.scenario,
                r.metric,
                r.cell,
                r.value,
                r.expectation.as_deref().unwrap_or("-"),
                status
            ));
        }
        s
    }
}

/// Checks every metric recorded in `dir`'s manifest against the
/// expectations file.
pub fn summarize(dir: &Path) -> Result<Report, HarnessError> {
    let manifest = read_manifest(dir)?;
    let (version, exp) = expectations();
    let scenario = manifest.config.scenario.name();
    let rows = manifest
        .metrics
        .iter()
        .map(|m| {
            let e = exp.iter().find(|e| e.applies(scenario, &m.name, &m.cell));
            ReportRow {
                scenario: scenario.to_string(),
                metric: m.name.clone(),
                cell: m.cell.clone(),
                value: m.value,
                expectation: e.map(Expectation::describe),
                pass: e.map(|e| e.holds(m.value)),
            }
        })
        .collect();
    Ok(Report {
        expectations_version: version,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_file_parses() {
        let (v, e) = expectations();
        assert!(v >= 1);
        assert!(e.iter().any(|x| x.metric == "ks_last"));
    }

    #[test]
    fn bounds() {
        let e = Expectation {
            scenario: "x".into(),
            metric: "m".into(),
            cell: None,
            min: Some(-2.3),
            max: Some(-1.7),
            lt: None,
        };
        assert!(e.holds(-2.0));
        assert!(!e.holds(-1.2));
        assert!(!e.holds(f64::NAN));
        assert_eq!(e.describe(), ">= -2.3 and <= -1.7");
    }
}

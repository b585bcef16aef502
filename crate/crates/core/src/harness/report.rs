//! Check results and the text and JSON reports built from them.

use serde::Serialize;
use serde_json::Value;

use crate::geometry::GeometryConfig;

pub const REPORT_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Ambiguous,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Ambiguous => "ambiguous",
            Status::Skipped => "skipped",
        }
    }
}

/// Where an expected value comes from: quoted from the source construction,
/// elementary, or computed by an independent route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Anchored,
    Elementary,
    Computed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub value: Value,
    pub basis: Basis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub expected: Expected,
    pub actual: Value,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeometryInfo {
    pub twist: [i64; 2],
    pub nodal_quadric: bool,
}

impl From<GeometryConfig> for GeometryInfo {
    fn from(g: GeometryConfig) -> Self {
        GeometryInfo { twist: [g.a, g.b], nodal_quadric: g.is_nodal_quadric() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub geometry: GeometryInfo,
    pub results: Vec<CheckResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(geometry: GeometryConfig, results: Vec<CheckResult>) -> Self {
        Report { version: REPORT_VERSION, geometry: geometry.into(), results }
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    /// No failures and no ambiguity among the checks that ran.
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let [a, b] = self.geometry.twist;
        let mut out = format!("geometry: twist ({a}, {b})\n");
        let width = self.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.results {
            out.push_str(&format!("{:<9} {:<width$}  {}\n", r.status.as_str().to_uppercase(), r.name, compact(&r.actual)));
            if r.status == Status::Fail || r.status == Status::Ambiguous {
                out.push_str(&format!("{:<9} {:<width$}  expected {}\n", "", "", compact(&r.expected.value)));
            }
            if let Some(n) = &r.note {
                out.push_str(&format!("{:<9} {:<width$}  note: {n}\n", "", ""));
            }
        }
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} ambiguous, {} skipped\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Ambiguous),
            self.count(Status::Skipped),
        ));
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        let head: String = s.chars().take(97).collect();
        format!("{head}...")
    } else {
        s
    }
}

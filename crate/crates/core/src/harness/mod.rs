//! Configuration, the check registry and reports.

mod checks;
mod config;
mod corpus;
mod report;
mod session;

pub use checks::{applies, find, Check, CheckError, Outcome, Scope, REGISTRY};
pub use config::{
    ChargeDef, CheckSelection, CollectionDef, GeometrySection, HarnessConfig, HeartDef, KernelDef, ObjectDef, SimpleDef,
    TiltDef, DEFAULT_CONFIG,
};
pub use corpus::{corpus, CORPUS_SEED, CORPUS_SIZE};
pub use report::{Basis, CheckResult, Expected, Format, GeometryInfo, Report, Status, REPORT_VERSION};
pub use session::{KernelData, Session};

use crate::error::HarnessError;

/// Runs the named checks, or the whole registry for `None`.
/// Results come back in registry order.
pub fn run_checks(session: &Session, only: Option<&[String]>) -> Result<Report, HarnessError> {
    if let Some(unknown) = only.unwrap_or_default().iter().find(|n| find(n).is_none()) {
        return Err(HarnessError::UnknownCheck(unknown.clone()));
    }
    let selected: Vec<&'static Check> =
        REGISTRY.iter().filter(|c| only.is_none_or(|names| names.iter().any(|n| n == c.name))).collect();
    let geometry = session.geometry();
    let results = crate::parallel::map(&selected, |c| run_one(&session.clone(), c));
    Ok(Report::new(geometry, results))
}

/// Runs the checks selected by the configuration; an empty `only` list selects all.
pub fn run_configured(session: &Session) -> Result<Report, HarnessError> {
    let only = &session.config().checks.only;
    run_checks(session, (!only.is_empty()).then_some(only.as_slice()))
}

pub fn run_one(session: &Session, check: &Check) -> CheckResult {
    let g = session.geometry();
    let base = |status, expected, actual, note, detail| CheckResult {
        name: check.name.to_string(),
        status,
        expected: Expected { value: expected, basis: check.basis },
        actual,
        anchor: check.anchor.to_string(),
        note,
        detail,
    };
    if !applies(check, g) {
        return base(
            Status::Skipped,
            serde_json::Value::Null,
            serde_json::Value::Null,
            Some(format!("anchored to the nodal quadric; twist is ({}, {})", g.a, g.b)),
            None,
        );
    }
    match (check.run)(session) {
        Ok(o) => {
            let status = if o.expected == o.actual { Status::Pass } else { Status::Fail };
            base(status, o.expected, o.actual, None, o.detail)
        }
        Err(CheckError::Ambiguous(m)) => base(Status::Ambiguous, serde_json::Value::Null, serde_json::Value::Null, Some(m), None),
        Err(CheckError::Failed(m)) => base(Status::Fail, serde_json::Value::Null, serde_json::Value::Null, Some(m), None),
    }
}

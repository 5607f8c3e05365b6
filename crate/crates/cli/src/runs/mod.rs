// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

pub mod compare;
pub mod jcm;
pub mod quantum;
pub mod reproduce;
pub mod semiclassical;

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::output::Artifacts;

/// Files of a completed run, and the check it failed, if any.
pub struct RunResult {
    pub artifacts: Artifacts,
    pub failure: Option<CliError>,
}

/// Executes one configuration. A run that completes but fails its own
/// check keeps its files and carries the failure as a numerical error.
pub fn execute(cfg: &RunConfig) -> Result<RunResult, CliError> {
    let ok = |artifacts| Ok(RunResult { artifacts, failure: None });
    let failed = |artifacts, e| Ok(RunResult { artifacts, failure: Some(e) });
    match cfg.mode {
        Mode::Quantum => ok(quantum::run_quantum(cfg)?.artifacts),
        Mode::Semiclassical => ok(semiclassical::run_semiclassical(cfg)?.0),
        Mode::ValidateJcm => {
            let (artifacts, summary) = jcm::run_jcm(&cfg.jcm)?;
            match &summary.rabi {
                Some(r) if !r.passed => failed(artifacts, CliError::Numerical {
                    message: format!(
                        "Rabi check failed: period {} vs {} (relative error {:e}), max entropy {:e}",
                        r.measured_period, r.expected_period, r.relative_error, r.max_entropy
                    ),
                    details: serde_json::to_value(r).expect("serializable"),
                }),
                _ => ok(artifacts),
            }
        }
        Mode::Compare => {
            let (artifacts, rows) = compare::run_compare(cfg)?;
            let bad: Vec<f64> = rows.iter().filter(|r| !r.pass).map(|r| r.alpha).collect();
            if bad.is_empty() {
                ok(artifacts)
            } else {
                failed(artifacts, CliError::Numerical {
                    message: format!("flux deviation above tolerance for alpha = {bad:?}"),
                    details: serde_json::to_value(&rows).expect("serializable"),
                })
            }
        }
        Mode::Reproduce => {
            let (artifacts, report) = reproduce::reproduce(cfg)?;
            let bad = report.failures();
            if bad.is_empty() {
                ok(artifacts)
            } else {
                failed(artifacts, CliError::Numerical {
                    message: format!("baselines not reproduced: {}", bad.join(", ")),
                    details: serde_json::to_value(&report).expect("serializable"),
                })
            }
        }
    }
}

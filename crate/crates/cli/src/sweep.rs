// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Cartesian sweeps. Every point is an independent configuration whose
//! files land under a directory named by its coordinates.

use rayon::prelude::*;

use crate::config::{set_path, LoadedConfig};
use crate::error::CliError;
use crate::output::{Artifacts, Table};
use crate::runs::execute;

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub name: String,
    pub coordinates: Vec<(String, toml::Value)>,
    pub config: LoadedConfig,
}

fn value_label(v: &toml::Value) -> String {
    let raw = match v {
        toml::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    raw.chars().map(|c| if c.is_ascii_alphanumeric() || "._-+".contains(c) { c } else { '-' }).collect()
}

pub fn sweep_points(base: &LoadedConfig) -> Result<Vec<SweepPoint>, CliError> {
    let axes = &base.config.sweep;
    let mut table = base.table.clone();
    table.remove("sweep");
    let mut coords: Vec<Vec<(String, toml::Value)>> = vec![Vec::new()];
    for axis in axes {
        coords = coords
            .into_iter()
            .flat_map(|c| {
                axis.values.iter().map(move |v| {
                    let mut next = c.clone();
                    next.push((axis.parameter.clone(), v.clone()));
                    next
                })
            })
            .collect();
    }
    coords
        .into_iter()
        .map(|c| {
            let mut t = table.clone();
            for (k, v) in &c {
                set_path(&mut t, k, v.clone()).map_err(|e| CliError::validation(format!("sweep {k}: {e}")))?;
            }
            let name = if c.is_empty() {
                "base".to_string()
            } else {
                c.iter().map(|(k, v)| format!("{k}={}", value_label(v))).collect::<Vec<_>>().join("_")
            };
            let config = LoadedConfig::from_table(t, &format!("sweep point {name}"))?;
            Ok(SweepPoint { name, coordinates: c, config })
        })
        .collect()
}

/// Runs every point; failed points are listed in `sweep.csv` and returned.
pub fn run_sweep(base: &LoadedConfig) -> Result<(Artifacts, Vec<(String, CliError)>), CliError> {
    let points = sweep_points(base)?;
    let results: Vec<Result<crate::runs::RunResult, CliError>> =
        points.par_iter().map(|pt| execute(&pt.config.config)).collect();
    let mut header = vec!["point".to_string()];
    header.extend(base.config.sweep.iter().map(|a| a.parameter.clone()));
    header.push("status".into());
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut index = Table::new(&header_refs)?;
    let mut artifacts = Artifacts::default();
    let mut failures = Vec::new();
    for (pt, res) in points.iter().zip(results) {
        let mut row = vec![pt.name.clone()];
        row.extend(pt.coordinates.iter().map(|(_, v)| value_label(v)));
        match res {
            Ok(r) => {
                let mut a = r.artifacts;
                a.add("config.toml", pt.config.echo().into_bytes());
                artifacts.absorb(&pt.name, a);
                match r.failure {
                    None => row.push("ok".into()),
                    Some(e) => {
                        row.push(format!("failed: {e}"));
                        failures.push((pt.name.clone(), e));
                    }
                }
            }
            Err(e @ CliError::Validation(_)) => return Err(e.with_context(&pt.name)),
            Err(e) => {
                row.push(format!("failed: {e}"));
                failures.push((pt.name.clone(), e));
            }
        }
        index.row(&row)?;
    }
    artifacts.add("sweep.csv", index.finish()?);
    Ok((artifacts, failures))
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::model::ModelParams;
use edjcm_core::semiclassical::{sc_steady_state, SemiclassicalParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{fmt_f64, Artifacts, Table};
use crate::runs::quantum::{coherent_steady_fluxes, SteadyFluxes};

pub const COMPARE_HEADER: [&str; 18] = [
    "alpha", "n_fock", "t_final", "steady_reached", "P_quantum", "P_semiclassical", "dev_P", "QH_quantum",
    "QH_semiclassical", "dev_QH", "QC_quantum", "QC_semiclassical", "dev_QC", "eta_quantum", "eta_semiclassical",
    "dev_eta", "flagged", "pass",
];

#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub alpha: f64,
    pub quantum: SteadyFluxes,
    pub p_sc: f64,
    pub qdot_h_sc: f64,
    pub qdot_c_sc: f64,
    pub eta_sc: f64,
    pub dev_p: f64,
    pub dev_qh: f64,
    pub dev_qc: f64,
    pub dev_eta: f64,
    /// The quantum run did not meet the steady-state criteria.
    pub flagged: bool,
    pub pass: bool,
}

impl CompareRow {
    pub fn max_deviation(&self) -> f64 {
        self.dev_p.max(self.dev_qh).max(self.dev_qc)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (a / b - 1.0).abs()
    }
}

pub fn compare_row(model: &ModelParams, alpha: f64, step_h: f64, t_max: f64, tolerance: f64) -> Result<CompareRow, CliError> {
    let q = coherent_steady_fluxes(model, alpha, step_h, t_max)?;
    let sc = sc_steady_state(&SemiclassicalParams::from_quantum(model, alpha))?;
    let f = &sc.fluxes;
    let eta_sc = sc.eta.unwrap_or(f64::NAN);
    let (dev_p, dev_qh, dev_qc) = (rel(q.fluxes.p_m, f.p), rel(q.fluxes.qdot_h, f.qdot_h), rel(q.fluxes.qdot_c, f.qdot_c));
    let dev_eta = rel(q.eta, eta_sc);
    let pass = dev_p <= tolerance && dev_qh <= tolerance && dev_qc <= tolerance;
    Ok(CompareRow {
        alpha,
        flagged: !q.steady.reached,
        quantum: q,
        p_sc: f.p,
        qdot_h_sc: f.qdot_h,
        qdot_c_sc: f.qdot_c,
        eta_sc,
        dev_p,
        dev_qh,
        dev_qc,
        dev_eta,
        pass,
    })
}

pub fn compare_table(rows: &[CompareRow]) -> Result<Vec<u8>, CliError> {
    let mut table = Table::new(&COMPARE_HEADER)?;
    for r in rows {
        let q = &r.quantum;
        let mut cells: Vec<String> = [r.alpha, q.n_fock as f64, q.t_final].iter().map(|v| fmt_f64(*v)).collect();
        cells.push(q.steady.reached.to_string());
        cells.extend(
            [
                q.fluxes.p_m,
                r.p_sc,
                r.dev_p,
                q.fluxes.qdot_h,
                r.qdot_h_sc,
                r.dev_qh,
                q.fluxes.qdot_c,
                r.qdot_c_sc,
                r.dev_qc,
                q.eta,
                r.eta_sc,
                r.dev_eta,
            ]
            .iter()
            .map(|v| fmt_f64(*v)),
        );
        cells.push(r.flagged.to_string());
        cells.push(r.pass.to_string());
        table.row(&cells)?;
    }
    table.finish()
}

pub fn run_compare(cfg: &RunConfig) -> Result<(Artifacts, Vec<CompareRow>), CliError> {
    let model = &cfg.model;
    let step_h = cfg.integration.step_h;
    if !(step_h > 0.0) {
        return Err(CliError::validation("compare: integration.step_h must be set explicitly".into()));
    }
    let t_max = cfg.compare.t_max / model.gamma_eff();
    let rows: Vec<CompareRow> = cfg
        .compare
        .alphas
        .par_iter()
        .map(|&a| compare_row(model, a, step_h, t_max, cfg.compare.tolerance).map_err(|e| e.with_context(&format!("alpha = {a}"))))
        .collect::<Result<_, _>>()?;
    let mut artifacts = Artifacts::default();
    artifacts.add("compare.csv", compare_table(&rows)?);
    artifacts.add_json("summary.json", &rows);
    Ok((artifacts, rows))
}

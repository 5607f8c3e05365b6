// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::linalg::ComplexMatrix;
use edjcm_core::semiclassical::printed::{corrected, literature_inversion_ratio};
use edjcm_core::semiclassical::{
    sc_fluxes_from_state, sc_propagate, sc_steady_state, scovil_inversion_ratio, steady_residual, ScPropagateConfig, ScState,
    SemiclassicalParams,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{fmt_f64, matrix_text, Artifacts, Table};

pub const STEADY_HEADER: [&str; 25] = [
    "lambda_sc", "case", "rho_00", "rho_11", "rho_22", "im_rho_12", "phi", "r", "r_scovil", "r_literature", "P", "Qdot_H",
    "Qdot_C", "P_m", "Edot", "eta", "carnot", "residual", "residual_scale", "gamma01", "gamma02", "n01", "n02", "omega",
    "trace_identity",
];

#[derive(Clone, Debug, Serialize)]
pub struct PropagationCheck {
    pub t_final: f64,
    pub converged: bool,
    pub max_entry_deviation: f64,
    pub max_flux_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScSummary {
    pub params: SemiclassicalParams,
    pub case: char,
    pub r: f64,
    pub r_scovil: f64,
    pub r_literature: f64,
    pub eta: Option<f64>,
    pub carnot_bound: Option<f64>,
    pub residual: f64,
    pub propagation: Option<PropagationCheck>,
}

pub fn steady_row(p: &SemiclassicalParams) -> Result<(Vec<String>, ScSummary), CliError> {
    let sol = sc_steady_state(p)?;
    let (res, scale) = steady_residual(&sol, p);
    let k = &sol.constants;
    let fixed = corrected(p.gamma01, p.gamma02, p.n01, p.n02, p.lambda_sc);
    let trace_identity = ((fixed.a + fixed.b + fixed.c) - fixed.f).abs() / fixed.f.abs().max(f64::MIN_POSITIVE);
    let r_scovil = if p.n02 > 0.0 { scovil_inversion_ratio(p.n01, p.n02) } else { f64::INFINITY };
    let r_lit = literature_inversion_ratio(p);
    let carnot = p.carnot_bound().ok();
    let f = &sol.fluxes;
    let mut row = vec![fmt_f64(p.lambda_sc), sol.case.letter().to_string()];
    row.extend(
        [
            k.a / k.f,
            k.b / k.f,
            k.c / k.f,
            k.d / k.f,
            sol.phi,
            sol.r,
            r_scovil,
            r_lit,
            f.p,
            f.qdot_h,
            f.qdot_c,
            f.p_m,
            f.edot,
            sol.eta.unwrap_or(f64::NAN),
            carnot.unwrap_or(f64::NAN),
            res,
            scale,
            p.gamma01,
            p.gamma02,
            p.n01,
            p.n02,
            p.omega,
            trace_identity,
        ]
        .iter()
        .map(|v| fmt_f64(*v)),
    );
    let summary = ScSummary {
        params: *p,
        case: sol.case.letter(),
        r: sol.r,
        r_scovil,
        r_literature: r_lit,
        eta: sol.eta,
        carnot_bound: carnot,
        residual: res / scale,
        propagation: None,
    };
    Ok((row, summary))
}

pub fn run_semiclassical(cfg: &RunConfig) -> Result<(Artifacts, ScSummary), CliError> {
    let p = cfg.semiclassical.params(&cfg.model)?;
    let (row, mut summary) = steady_row(&p)?;
    let mut table = Table::new(&STEADY_HEADER)?;
    table.row(&row)?;
    let mut artifacts = Artifacts::default();
    artifacts.add("steady.csv", table.finish()?);
    let sol = sc_steady_state(&p)?;
    artifacts.add("rho_ss.txt", matrix_text(&sol.rho_ss).into_bytes());

    if cfg.semiclassical.propagate {
        let rho0 = ScState::new(ComplexMatrix::from_real_diagonal(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]), 0.0)?;
        let traj = sc_propagate(&rho0, &p, &ScPropagateConfig::default())?;
        let mut checks = Table::new(&["time", "max_rate"])?;
        for (t, r) in &traj.checks {
            checks.numbers(&[*t, *r])?;
        }
        artifacts.add("propagation.csv", checks.finish()?);
        let numeric = sc_fluxes_from_state(&traj.final_state.rho, &p)?.fluxes;
        let f = sol.fluxes;
        let scale = f.qdot_h.abs().max(f64::MIN_POSITIVE);
        let flux_dev = [numeric.p - f.p, numeric.qdot_h - f.qdot_h, numeric.qdot_c - f.qdot_c]
            .iter()
            .fold(0.0f64, |m, d| m.max(d.abs() / scale));
        summary.propagation = Some(PropagationCheck {
            t_final: traj.final_state.time,
            converged: traj.converged,
            max_entry_deviation: (&traj.final_state.rho - &sol.rho_ss).max_abs(),
            max_flux_deviation: flux_dev,
        });
    }
    artifacts.add_json("summary.json", &summary);
    Ok((artifacts, summary))
}

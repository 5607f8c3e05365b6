// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Reference-value table: steady field power, efficiency, Carnot bound,
//! inversion ratios and the quantum/semiclassical flux comparison.

use edjcm_core::integrator::{propagate, steady_state_power_fit, IntegrationConfig};
use edjcm_core::model::state::{fock_state, matter_level};
use edjcm_core::model::{ModelParams, SectorLayout};
use edjcm_core::semiclassical::printed::literature_inversion_ratio;
use edjcm_core::semiclassical::{sc_steady_state, scovil_inversion_ratio, SemiclassicalParams};
use edjcm_core::thermo::{EntropyMode, FluxRecorder, ThermoContext};
use edjcm_core::State;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{fmt_f64, Artifacts, Table};
use crate::runs::compare::{compare_row, compare_table, CompareRow};

pub const REFERENCE_BASELINES: &str = include_str!("../../baselines/reference.toml");

/// Field amplitudes E0 (lambda_sc with lambda = 1) of the inversion-ratio table.
pub const FIELD_AMPLITUDES: [(f64, &str); 3] = [(0.1, "0.1"), (1.0, "1"), (10.0, "10")];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Baseline {
    pub quantity: String,
    pub value: f64,
    #[serde(default)]
    pub abs: Option<f64>,
    #[serde(default)]
    pub rel: Option<f64>,
}

impl Baseline {
    pub fn tolerance(&self) -> f64 {
        match (self.rel, self.abs) {
            (Some(r), _) => r * self.value.abs(),
            (None, Some(a)) => a,
            (None, None) => 0.0,
        }
    }

    pub fn accepts(&self, computed: f64) -> bool {
        (computed - self.value).abs() <= self.tolerance()
    }
}

#[derive(Deserialize)]
struct BaselineFile {
    baseline: Vec<Baseline>,
}

pub fn reference_baselines() -> Vec<Baseline> {
    toml::from_str::<BaselineFile>(REFERENCE_BASELINES).expect("bundled baselines parse").baseline
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceRow {
    pub quantity: String,
    pub computed: f64,
    pub baseline: Option<Baseline>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceReport {
    pub rows: Vec<ReproduceRow>,
    pub comparison: Vec<CompareRow>,
}

impl ReproduceReport {
    pub fn failures(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.pass == Some(false)).map(|r| r.quantity.as_str()).collect()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VacuumRun {
    pub slope: f64,
    pub r_squared: f64,
    pub eta: f64,
    pub n_fock: usize,
}

/// Matter in |1>, field in vacuum, order-0 blocks, sampled once per time unit.
pub fn vacuum_power_run(model: &ModelParams, t_final: f64, step_h: f64, fit_window: usize) -> Result<VacuumRun, CliError> {
    let n = model.n_fock.max(2);
    let p = model.with_n_fock(n);
    let rho0 = State::product(&matter_level(3, 1)?, &fock_state(n, 0)?, SectorLayout::diagonal(n)?)?;
    let cfg = IntegrationConfig {
        step_h,
        t_final,
        sample_stride: (1.0 / step_h).round().max(1.0) as usize,
        extend: Some(edjcm_core::integrator::ExtendPolicy { increment: 10, max_n_fock: 800 }),
        ..Default::default()
    };
    let mut rec = FluxRecorder::new(ThermoContext::new(&p)?, EntropyMode::Skip);
    rec.enforce_second_law = false;
    let traj = propagate(&p, rho0, &cfg, &mut [&mut rec])?;
    let times: Vec<f64> = rec.records.iter().map(|r| r.time).collect();
    let ef: Vec<f64> = rec.records.iter().map(|r| r.e_f).collect();
    let fit = steady_state_power_fit(&times, &ef, fit_window.min(times.len() / 2))?;
    let last = rec.records.last().expect("at least one sample");
    Ok(VacuumRun { slope: fit.fit.slope, r_squared: fit.fit.r_squared, eta: -last.p_m / last.qdot_mh, n_fock: traj.final_state.n_fock() })
}

pub fn reproduce(cfg: &RunConfig) -> Result<(Artifacts, ReproduceReport), CliError> {
    let model = &cfg.model;
    let step_h = if cfg.integration.step_h > 0.0 { cfg.integration.step_h } else { 0.05 };
    let t_final = cfg.integration.to_seconds(cfg.integration.t_final, model);
    let vac = vacuum_power_run(model, t_final, step_h, cfg.integration.fit_window)?;

    let mut computed: Vec<(String, f64)> = vec![
        ("field_power".into(), vac.slope),
        ("field_power_r_squared".into(), vac.r_squared),
        ("efficiency".into(), vac.eta),
        ("carnot_bound".into(), model.carnot_bound()?),
    ];
    for (e0, label) in FIELD_AMPLITUDES {
        let p = SemiclassicalParams::from_quantum(model, e0);
        computed.push((format!("r_literature_e0_{label}"), literature_inversion_ratio(&p)));
        computed.push((format!("r_e0_{label}"), sc_steady_state(&p)?.r));
    }
    computed.push(("r_scovil".into(), scovil_inversion_ratio(model.n01, model.n02)));

    let t_max = cfg.compare.t_max / model.gamma_eff();
    let comparison: Vec<CompareRow> = cfg
        .compare
        .alphas
        .par_iter()
        .map(|&a| compare_row(model, a, step_h, t_max, cfg.compare.tolerance))
        .collect::<Result<_, _>>()?;
    let worst = comparison.iter().fold(0.0f64, |m, r| m.max(r.max_deviation()));
    computed.push(("flux_deviation_max".into(), worst));

    let baselines = reference_baselines();
    let rows: Vec<ReproduceRow> = computed
        .into_iter()
        .map(|(quantity, value)| {
            let baseline = baselines.iter().find(|b| b.quantity == quantity).cloned();
            let pass = baseline.as_ref().map(|b| b.accepts(value));
            ReproduceRow { quantity, computed: value, baseline, pass }
        })
        .collect();

    let mut table = Table::new(&["quantity", "computed", "baseline", "tolerance", "status"])?;
    for r in &rows {
        let (base, tol) = r.baseline.as_ref().map_or((f64::NAN, f64::NAN), |b| (b.value, b.tolerance()));
        let status = match r.pass {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "info",
        };
        table.row(&[r.quantity.clone(), fmt_f64(r.computed), fmt_f64(base), fmt_f64(tol), status.to_string()])?;
    }
    let mut artifacts = Artifacts::default();
    artifacts.add("reproduce.csv", table.finish()?);
    artifacts.add("compare.csv", compare_table(&comparison)?);
    let report = ReproduceReport { rows, comparison };
    artifacts.add_json("summary.json", &report);
    Ok((artifacts, report))
}

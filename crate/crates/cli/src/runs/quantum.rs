// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::entanglement::EntanglementRecorder;
use edjcm_core::integrator::{
    continue_from, propagate, steady_state_power_fit, IntegrationConfig, Observer, PowerFit, SampleDiagnostics,
};
use edjcm_core::model::{ModelParams, SectorLayout};
use edjcm_core::phase_space::{husimi_q, GridSpec};
use edjcm_core::thermo::{
    engine_efficiency, run_to_matter_steady_state, AuditSummary, Efficiency, EntropyMode, FluxRecorder, SteadyCriteria,
    ThermoContext, CSV_HEADER,
};
use edjcm_core::State;
use serde::Serialize;

use crate::config::{LayoutChoice, RunConfig};
use crate::error::CliError;
use crate::output::{matrix_text, Artifacts, Table};

#[derive(Clone, Debug, Serialize)]
pub struct SteadyInfo {
    pub reached: bool,
    pub rate_norm: f64,
    pub drift: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FinalFluxes {
    pub time: f64,
    pub p_m: f64,
    pub p_f: f64,
    pub qdot_h: f64,
    pub qdot_c: f64,
    pub qdot_mh: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumSummary {
    pub n_fock_initial: usize,
    pub n_fock_final: usize,
    /// Coherence orders carried by the state.
    pub coherence_orders: usize,
    pub t_final: f64,
    pub gamma_eff: f64,
    pub extensions: Vec<(f64, usize)>,
    pub steady: Option<SteadyInfo>,
    pub power_fit: Option<PowerFit>,
    pub last: Option<FinalFluxes>,
    pub efficiency: Option<Efficiency>,
    pub scovil_efficiency: f64,
    pub carnot_bound: Option<f64>,
    pub audit: Option<AuditSummary>,
    pub max_trace_error: f64,
    pub mean_photon_number: f64,
}

pub struct QuantumOutcome {
    pub artifacts: Artifacts,
    pub summary: QuantumSummary,
    pub final_state: State,
}

pub fn run_quantum(cfg: &RunConfig) -> Result<QuantumOutcome, CliError> {
    let n = cfg.initial.cutoff(cfg.model.n_fock);
    let params = cfg.model.with_n_fock(n);
    let wants_coherence = cfg.observers.entanglement || !cfg.observers.qfunction_times.is_empty();
    let layout = match cfg.integration.layout {
        LayoutChoice::Full => SectorLayout::full(n)?,
        LayoutChoice::Diagonal => SectorLayout::diagonal(n)?,
        LayoutChoice::Auto if wants_coherence => SectorLayout::full(n)?,
        LayoutChoice::Auto => SectorLayout::diagonal(n)?,
    };
    let orders = layout.orders().len();
    let rho0 = cfg.initial.block_state(n, layout)?;
    let icfg = cfg.integration.core_config(&params);
    let mode = if cfg.observers.entropy { EntropyMode::Full } else { EntropyMode::Skip };

    let mut flux = if cfg.observers.thermo {
        let mut r = FluxRecorder::new(ThermoContext::new(&params)?, mode);
        r.enforce_second_law = cfg.observers.enforce_second_law && mode == EntropyMode::Full;
        Some(r)
    } else {
        None
    };
    let mut ent = cfg.observers.entanglement.then(|| EntanglementRecorder::new(cfg.observers.entanglement_stride));
    let mut artifacts = Artifacts::default();

    let mut steady = None;
    let mut diagnostics: Vec<SampleDiagnostics> = Vec::new();
    let mut extensions = Vec::new();
    let (final_state, t_final) = {
        let mut obs: Vec<&mut dyn Observer> = Vec::new();
        if let Some(f) = flux.as_mut() {
            obs.push(f);
        }
        if let Some(e) = ent.as_mut() {
            obs.push(e);
        }
        if cfg.integration.until_steady {
            let t_min = cfg.integration.to_seconds(cfg.integration.steady_t_min, &params);
            let run = run_to_matter_steady_state(&params, rho0, &icfg, SteadyCriteria::default(), t_min, icfg.t_final, &mut obs)?;
            steady = Some(SteadyInfo { reached: run.reached, rate_norm: run.rate_norm, drift: run.drift });
            diagnostics = run.trajectory.samples;
            extensions = run.trajectory.extensions;
            (run.trajectory.final_state, run.trajectory.final_time)
        } else {
            let mut stops: Vec<f64> =
                cfg.observers.qfunction_times.iter().map(|t| cfg.integration.to_seconds(*t, &params)).collect();
            stops.sort_by(f64::total_cmp);
            stops.dedup();
            let mut state = rho0;
            let mut t = 0.0;
            let mut snapshot = 0usize;
            let targets: Vec<(f64, bool)> = stops.iter().map(|&s| (s, true)).chain([(icfg.t_final, false)]).collect();
            let mut first = true;
            for (target, is_q) in targets {
                let steps = ((target - t) / icfg.step_h).round();
                if steps >= 1.0 || first {
                    let leg = IntegrationConfig { t_final: t + steps * icfg.step_h, ..icfg.clone() };
                    let traj = if first { propagate(&params, state, &leg, &mut obs)? } else { continue_from(&params, state, t, &leg, &mut obs)? };
                    first = false;
                    t = traj.final_time;
                    diagnostics.extend(traj.samples);
                    extensions.extend(traj.extensions);
                    state = traj.final_state;
                }
                if is_q {
                    let rho_f = state.reduced_field();
                    let alpha = cfg.initial.alpha().norm().max(state.mean_photon_number().sqrt());
                    let mut spec = GridSpec::for_amplitude(alpha);
                    spec.points = cfg.observers.qfunction_points;
                    if cfg.observers.qfunction_half_width > 0.0 {
                        spec.half_width = cfg.observers.qfunction_half_width;
                    }
                    let grid = husimi_q(&rho_f, spec, t).map_err(|e| CliError::validation(format!("observers: {e}")))?;
                    artifacts.add(format!("q_{snapshot:03}.txt"), grid.to_text().into_bytes());
                    snapshot += 1;
                }
            }
            (state, t)
        }
    };

    let mut summary = QuantumSummary {
        n_fock_initial: n,
        n_fock_final: final_state.n_fock(),
        coherence_orders: orders,
        t_final,
        gamma_eff: params.gamma_eff(),
        extensions,
        steady,
        power_fit: None,
        last: None,
        efficiency: None,
        scovil_efficiency: params.scovil_efficiency(),
        carnot_bound: params.carnot_bound().ok(),
        audit: None,
        max_trace_error: diagnostics.iter().fold(0.0, |m, s| m.max(s.trace_error)),
        mean_photon_number: final_state.mean_photon_number(),
    };

    let mut diag = Table::new(&["time", "trace_error", "hermiticity_error", "top_fock_occupancy", "n_fock", "min_eigenvalue"])?;
    for s in &diagnostics {
        diag.numbers(&[
            s.time,
            s.trace_error,
            s.hermiticity_error,
            s.top_fock_occupancy,
            s.n_fock as f64,
            s.min_eigenvalue.unwrap_or(f64::NAN),
        ])?;
    }
    artifacts.add("diagnostics.csv", diag.finish()?);

    if let Some(f) = &flux {
        let mut table = Table::new(&CSV_HEADER)?;
        for r in &f.records {
            table.numbers(&r.values())?;
        }
        artifacts.add("flux.csv", table.finish()?);
        let times: Vec<f64> = f.records.iter().map(|r| r.time).collect();
        let ef: Vec<f64> = f.records.iter().map(|r| r.e_f).collect();
        let window = cfg.integration.fit_window.min(times.len() / 2);
        summary.power_fit = steady_state_power_fit(&times, &ef, window).ok();
        if let Some(r) = f.records.last() {
            summary.last =
                Some(FinalFluxes { time: r.time, p_m: r.p_m, p_f: r.p_f, qdot_h: r.qdot_h(), qdot_c: r.qdot_c(), qdot_mh: r.qdot_mh });
            if let Ok(c) = params.carnot_bound() {
                summary.efficiency = engine_efficiency(r.p_m, r.qdot_mh, c).ok();
            }
        }
        summary.audit = Some(f.audit);
    }

    if let Some(e) = &ent {
        let mut table =
            Table::new(&["time", "S_mf", "S_m", "S_f", "S_cond_m", "S_cond_f", "mutual_information", "pt_min_eigenvalue", "pt_negative_mass"])?;
        for (t, ce, pt) in &e.records {
            table.numbers(&[*t, ce.s_mf, ce.s_m, ce.s_f, ce.s_cond_m, ce.s_cond_f, ce.mutual_information(), pt.min_eigenvalue, pt.negative_mass])?;
        }
        artifacts.add("entanglement.csv", table.finish()?);
    }

    artifacts.add("final_matter.txt", matrix_text(&final_state.reduced_matter()).into_bytes());
    artifacts.add_json("summary.json", &summary);
    Ok(QuantumOutcome { artifacts, summary, final_state })
}

/// Steady-state fluxes of a coherent-field start, order-0 projected.
#[derive(Clone, Debug, Serialize)]
pub struct SteadyFluxes {
    pub n_fock: usize,
    pub t_final: f64,
    pub steady: SteadyInfo,
    pub fluxes: FinalFluxes,
    pub eta: f64,
}

pub fn coherent_steady_fluxes(
    model: &ModelParams,
    alpha: f64,
    step_h: f64,
    t_max: f64,
) -> Result<SteadyFluxes, CliError> {
    use edjcm_core::model::recommended_cutoff;
    use edjcm_core::model::state::matter_level;
    use edjcm_core::phase_space::coherent_density;
    let n = recommended_cutoff(alpha * alpha).max(model.n_fock);
    let params = model.with_n_fock(n);
    let rho_f = coherent_density(edjcm_core::Complex64::new(alpha, 0.0), n).map_err(|e| CliError::validation(e.to_string()))?;
    let rho0 = State::product(&matter_level(3, 1)?, &rho_f, SectorLayout::diagonal(n)?)?;
    let icfg = IntegrationConfig {
        step_h,
        t_final: t_max,
        sample_stride: ((1.0 / params.gamma_eff()) / step_h).round().max(1.0) as usize,
        extend: Some(edjcm_core::integrator::ExtendPolicy { increment: 10, max_n_fock: 800 }),
        ..Default::default()
    };
    let run = run_to_matter_steady_state(&params, rho0, &icfg, SteadyCriteria::default(), 0.0, t_max, &mut [])?;
    let st = &run.trajectory.final_state;
    let ctx = ThermoContext::new(&params)?;
    let generator = edjcm_core::model::BlockGenerator::new(&params, st.layout());
    let r = ctx.record(run.trajectory.final_time, st, &generator, EntropyMode::Skip)?;
    Ok(SteadyFluxes {
        n_fock: st.n_fock(),
        t_final: run.trajectory.final_time,
        steady: SteadyInfo { reached: run.reached, rate_norm: run.rate_norm, drift: run.drift },
        fluxes: FinalFluxes { time: r.time, p_m: r.p_m, p_f: r.p_f, qdot_h: r.qdot_h(), qdot_c: r.qdot_c(), qdot_mh: r.qdot_mh },
        eta: -r.p_m / r.qdot_mh,
    })
}

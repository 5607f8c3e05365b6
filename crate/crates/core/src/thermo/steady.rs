// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Matter-only steady-state detection. The field keeps gaining energy, so
//! the criterion looks at the reduced matter state alone.

use serde::Serialize;

use crate::error::{IntegrationError, ThermoError};
use crate::integrator::{continue_from, propagate_from, IntegrationConfig, Observer, Trajectory};
use crate::linalg::ComplexMatrix;
use crate::model::{BlockGenerator, BlockState, ModelParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SteadyCriteria {
    /// max |d rho_m / dt| threshold.
    pub rate_tolerance: f64,
    /// Relative change of rho_m over one 1/Gamma_eff.
    pub drift_tolerance: f64,
}

impl Default for SteadyCriteria {
    fn default() -> Self {
        Self { rate_tolerance: 1e-9, drift_tolerance: 1e-7 }
    }
}

pub fn matter_rate_norm(state: &BlockState<f64>, generator: &BlockGenerator<f64>) -> f64 {
    generator.derivative(state).reduced_matter().max_abs()
}

pub fn relative_change(a: &ComplexMatrix<f64>, b: &ComplexMatrix<f64>) -> f64 {
    (a - b).max_abs() / b.max_abs().max(f64::MIN_POSITIVE)
}

#[derive(Clone, Debug)]
pub struct SteadyRun {
    pub trajectory: Trajectory,
    pub reached: bool,
    pub rate_norm: f64,
    pub drift: f64,
}

/// Propagates in windows of 1/Gamma_eff until both criteria hold or `t_max` is reached.
///
/// `cfg.t_final` is ignored; every window is sampled with `cfg.sample_stride`.
pub fn run_to_matter_steady_state(
    params: &ModelParams,
    rho0: BlockState<f64>,
    cfg: &IntegrationConfig,
    criteria: SteadyCriteria,
    t_min: f64,
    t_max: f64,
    observers: &mut [&mut dyn Observer],
) -> Result<SteadyRun, IntegrationError> {
    let window = 1.0 / params.gamma_eff();
    if !window.is_finite() {
        return Err(IntegrationError::Config("steady-state detection needs Gamma_eff > 0".into()));
    }
    let steps_per_window = (window / cfg.step_h).round().max(1.0);
    let window = steps_per_window * cfg.step_h;
    let mut t = 0.0;
    let mut state = rho0;
    let mut prev_m = state.reduced_matter();
    let mut samples = Vec::new();
    let mut extensions = Vec::new();
    loop {
        let wcfg = IntegrationConfig { t_final: t + window, ..cfg.clone() };
        let traj = if samples.is_empty() {
            propagate_from(params, state, t, &wcfg, observers)?
        } else {
            continue_from(params, state, t, &wcfg, observers)?
        };
        t = traj.final_time;
        samples.extend(traj.samples);
        extensions.extend(traj.extensions);
        state = traj.final_state;
        let gen = BlockGenerator::new(params, state.layout());
        let rate_norm = matter_rate_norm(&state, &gen);
        let m = state.reduced_matter();
        let drift = relative_change(&m, &prev_m);
        prev_m = m;
        let reached = rate_norm < criteria.rate_tolerance && drift < criteria.drift_tolerance;
        if (reached && t >= t_min) || t + 0.5 * window > t_max {
            return Ok(SteadyRun {
                trajectory: Trajectory { samples, final_state: state, final_time: t, extensions },
                reached,
                rate_norm,
                drift,
            });
        }
    }
}

pub fn require_steady(run: &SteadyRun) -> Result<(), ThermoError> {
    if run.reached {
        Ok(())
    } else {
        Err(ThermoError::NotSteady(format!(
            "at t = {}: |d rho_m/dt| = {:e}, drift = {:e}",
            run.trajectory.final_time, run.rate_norm, run.drift
        )))
    }
}

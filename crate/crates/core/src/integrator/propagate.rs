// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Sampled RK4 propagation of the block-form ED-JCM state.

use serde::{Deserialize, Serialize};

use crate::error::IntegrationError;
use crate::integrator::rk4::Rk4;
use crate::linalg::{eigvalsh, POSITIVITY_FLOOR};
use crate::model::{BlockGenerator, BlockState, ModelParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendPolicy {
    pub increment: usize,
    pub max_n_fock: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegrationConfig {
    pub step_h: f64,
    /// Absolute end time.
    pub t_final: f64,
    pub sample_stride: usize,
    pub renormalize: bool,
    pub trace_limit: f64,
    pub top_fock_limit: f64,
    pub extend: Option<ExtendPolicy>,
    /// Check the spectrum every k-th sample (0 disables).
    pub positivity_stride: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            step_h: 0.01,
            t_final: 1.0,
            sample_stride: 1,
            renormalize: false,
            trace_limit: 1e-6,
            top_fock_limit: 1e-8,
            extend: None,
            positivity_stride: 0,
        }
    }
}

impl IntegrationConfig {
    pub fn validate(&self, t_start: f64) -> Result<(), IntegrationError> {
        if !(self.step_h > 0.0) || !self.step_h.is_finite() {
            return Err(IntegrationError::Config(format!("step_h must be positive, got {}", self.step_h)));
        }
        if !(self.t_final >= t_start) {
            return Err(IntegrationError::Config(format!("t_final {} precedes start {t_start}", self.t_final)));
        }
        if self.t_final > t_start && self.t_final - t_start < self.step_h * (1.0 - 1e-9) {
            return Err(IntegrationError::Config(format!("span {} shorter than one step", self.t_final - t_start)));
        }
        if self.sample_stride == 0 {
            return Err(IntegrationError::Config("sample_stride must be >= 1".into()));
        }
        if let Some(e) = &self.extend {
            if e.increment == 0 {
                return Err(IntegrationError::Config("extend.increment must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn steps(&self, t_start: f64) -> usize {
        ((self.t_final - t_start) / self.step_h).round() as usize
    }
}

/// What an observer sees at each sample.
pub struct Sample<'a> {
    pub time: f64,
    pub state: &'a BlockState<f64>,
    pub generator: &'a BlockGenerator<f64>,
}

pub trait Observer {
    fn observe(&mut self, sample: &Sample<'_>) -> Result<(), String>;
}

/// Drops the first sample, which a chained propagation repeats from the previous leg.
pub struct SkipFirst<'a> {
    inner: &'a mut dyn Observer,
    pending: bool,
}

impl<'a> SkipFirst<'a> {
    pub fn new(inner: &'a mut dyn Observer) -> Self {
        Self { inner, pending: true }
    }
}

impl Observer for SkipFirst<'_> {
    fn observe(&mut self, sample: &Sample<'_>) -> Result<(), String> {
        if std::mem::take(&mut self.pending) {
            return Ok(());
        }
        self.inner.observe(sample)
    }
}

/// [`propagate_from`] for a leg that continues an earlier one: observers skip the joint sample.
pub fn continue_from(
    params: &ModelParams,
    rho0: BlockState<f64>,
    t_start: f64,
    cfg: &IntegrationConfig,
    observers: &mut [&mut dyn Observer],
) -> Result<Trajectory, IntegrationError> {
    let mut wrapped: Vec<SkipFirst<'_>> = observers.iter_mut().map(|o| SkipFirst::new(&mut **o)).collect();
    let mut refs: Vec<&mut dyn Observer> = wrapped.iter_mut().map(|w| w as &mut dyn Observer).collect();
    let mut traj = propagate_from(params, rho0, t_start, cfg, &mut refs)?;
    traj.samples.remove(0);
    Ok(traj)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleDiagnostics {
    pub time: f64,
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub top_fock_occupancy: f64,
    pub n_fock: usize,
    pub min_eigenvalue: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<SampleDiagnostics>,
    pub final_state: BlockState<f64>,
    pub final_time: f64,
    /// (time, new cutoff) for every automatic extension.
    pub extensions: Vec<(f64, usize)>,
}

impl Trajectory {
    pub fn max_trace_error(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.trace_error))
    }
}

/// Smallest eigenvalue of the full state.
pub fn min_eigenvalue(state: &BlockState<f64>) -> Result<f64, IntegrationError> {
    let values = if state.layout().is_diagonal() { state.diagonal_spectrum()? } else { eigvalsh(&state.to_dense())? };
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

pub fn propagate(
    params: &ModelParams,
    rho0: BlockState<f64>,
    cfg: &IntegrationConfig,
    observers: &mut [&mut dyn Observer],
) -> Result<Trajectory, IntegrationError> {
    propagate_from(params, rho0, 0.0, cfg, observers)
}

/// Propagates from `t_start` to `cfg.t_final`, sampling every `sample_stride` steps and at the end.
pub fn propagate_from(
    params: &ModelParams,
    rho0: BlockState<f64>,
    t_start: f64,
    cfg: &IntegrationConfig,
    observers: &mut [&mut dyn Observer],
) -> Result<Trajectory, IntegrationError> {
    params.validate()?;
    cfg.validate(t_start)?;
    let steps = cfg.steps(t_start);
    let mut state = rho0;
    let mut generator = BlockGenerator::new(params, state.layout());
    let mut rk = Rk4::new(state.layout().len());
    let mut samples = Vec::new();
    let mut extensions = Vec::new();
    let mut sample_count = 0usize;

    let record = |time: f64,
                      state: &BlockState<f64>,
                      generator: &BlockGenerator<f64>,
                      observers: &mut [&mut dyn Observer],
                      count: &mut usize|
     -> Result<SampleDiagnostics, IntegrationError> {
        if !state.is_finite() {
            return Err(IntegrationError::NonFinite { time });
        }
        let trace_error = (state.trace() - 1.0).abs();
        if trace_error > cfg.trace_limit {
            return Err(IntegrationError::TraceDrift { time, drift: trace_error, limit: cfg.trace_limit });
        }
        let min_eigenvalue = if cfg.positivity_stride > 0 && *count % cfg.positivity_stride == 0 {
            let m = min_eigenvalue(state)?;
            if m < -POSITIVITY_FLOOR {
                return Err(IntegrationError::Positivity { time, min_eigenvalue: m });
            }
            Some(m)
        } else {
            None
        };
        *count += 1;
        let sample = Sample { time, state, generator };
        for obs in observers.iter_mut() {
            obs.observe(&sample).map_err(|message| IntegrationError::Observer { time, message })?;
        }
        Ok(SampleDiagnostics {
            time,
            trace_error,
            hermiticity_error: state.hermiticity_error(),
            top_fock_occupancy: state.top_fock_occupancy(),
            n_fock: state.n_fock(),
            min_eigenvalue,
        })
    };

    samples.push(record(t_start, &state, &generator, observers, &mut sample_count)?);
    for step in 1..=steps {
        rk.step(&generator, state.as_mut_slice(), cfg.step_h);
        let time = t_start + step as f64 * cfg.step_h;
        if cfg.renormalize {
            let tr = state.trace();
            if tr != 0.0 {
                for x in state.as_mut_slice() {
                    *x /= tr;
                }
            }
        }
        let top = state.top_fock_occupancy();
        if top > cfg.top_fock_limit {
            match &cfg.extend {
                Some(policy) if state.n_fock() + policy.increment <= policy.max_n_fock => {
                    state = state.extend(state.n_fock() + policy.increment)?;
                    generator = BlockGenerator::new(params, state.layout());
                    rk = Rk4::new(state.layout().len());
                    extensions.push((time, state.n_fock()));
                }
                _ => {
                    return Err(IntegrationError::Truncation {
                        time,
                        occupancy: top,
                        limit: cfg.top_fock_limit,
                        cutoff: state.n_fock(),
                    })
                }
            }
        }
        if step % cfg.sample_stride == 0 || step == steps {
            samples.push(record(time, &state, &generator, observers, &mut sample_count)?);
        }
    }
    let final_time = t_start + steps as f64 * cfg.step_h;
    Ok(Trajectory { samples, final_state: state, final_time, extensions })
}

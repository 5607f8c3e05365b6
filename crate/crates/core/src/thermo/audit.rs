// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::integrator::{Observer, Sample};
use crate::thermo::fluxes::{check_second_law, EntropyMode, ThermoContext};
use crate::thermo::record::FluxRecord;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstLawResiduals {
    /// |Edot_mf - Qdot_m - Qdot_V|
    pub total: f64,
    /// |Edot_m + Edot_f - Edot_mf + Qdot_V|
    pub split: f64,
}

pub fn first_law_audit(r: &FluxRecord) -> FirstLawResiduals {
    FirstLawResiduals {
        total: (r.edot_mf - r.qdot_m - r.qdot_v).abs(),
        split: (r.edot_m + r.edot_f - r.edot_mf + r.qdot_v).abs(),
    }
}

/// Worst values seen over a set of records.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditSummary {
    pub samples: usize,
    pub min_sigma: f64,
    pub max_first_law: f64,
    pub max_power_balance: f64,
    pub max_field_heat: f64,
    pub max_trace_drift: f64,
}

impl Default for AuditSummary {
    fn default() -> Self {
        Self {
            samples: 0,
            min_sigma: f64::INFINITY,
            max_first_law: 0.0,
            max_power_balance: 0.0,
            max_field_heat: 0.0,
            max_trace_drift: 0.0,
        }
    }
}

impl AuditSummary {
    pub fn add(&mut self, r: &FluxRecord) {
        self.samples += 1;
        if !r.sigma.is_nan() {
            self.min_sigma = self.min_sigma.min(r.sigma);
        }
        let fl = first_law_audit(r);
        self.max_first_law = self.max_first_law.max(fl.total).max(fl.split);
        self.max_power_balance = self.max_power_balance.max((r.p_m + r.p_f).abs());
        self.max_field_heat = self.max_field_heat.max(r.qdot_f.abs());
    }

    pub fn add_trace_drift(&mut self, drift: f64) {
        self.max_trace_drift = self.max_trace_drift.max(drift);
    }

    pub fn merge(&mut self, other: &AuditSummary) {
        self.samples += other.samples;
        self.min_sigma = self.min_sigma.min(other.min_sigma);
        self.max_first_law = self.max_first_law.max(other.max_first_law);
        self.max_power_balance = self.max_power_balance.max(other.max_power_balance);
        self.max_field_heat = self.max_field_heat.max(other.max_field_heat);
        self.max_trace_drift = self.max_trace_drift.max(other.max_trace_drift);
    }
}

/// Records a [`FluxRecord`] at every sample.
pub struct FluxRecorder {
    pub context: ThermoContext,
    pub mode: EntropyMode,
    pub records: Vec<FluxRecord>,
    pub audit: AuditSummary,
    /// Abort the run when sigma drops below the hard limit.
    pub enforce_second_law: bool,
}

impl FluxRecorder {
    pub fn new(context: ThermoContext, mode: EntropyMode) -> Self {
        Self { context, mode, records: Vec::new(), audit: AuditSummary::default(), enforce_second_law: true }
    }
}

impl Observer for FluxRecorder {
    fn observe(&mut self, sample: &Sample<'_>) -> Result<(), String> {
        let r = self.context.record(sample.time, sample.state, sample.generator, self.mode).map_err(|e| e.to_string())?;
        if self.enforce_second_law {
            check_second_law(&r).map_err(|e| e.to_string())?;
        }
        self.audit.add(&r);
        self.audit.add_trace_drift((sample.state.trace() - 1.0).abs());
        self.records.push(r);
        Ok(())
    }
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

/// One time sample of the thermodynamic ledger.
///
/// The first 21 fields follow the documented column order; the trailing
/// rates are kept so that the first-law and entropy bookkeeping can be
/// audited from the CSV alone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FluxRecord {
    pub time: f64,
    pub e_mf: f64,
    pub e_m: f64,
    pub e_f: f64,
    pub qdot_m: f64,
    pub qdot_mc: f64,
    pub qdot_mh: f64,
    pub qdot_v: f64,
    pub qdot_vc: f64,
    pub qdot_vh: f64,
    pub p_m: f64,
    pub p_f: f64,
    pub s_mf: f64,
    pub s_m: f64,
    pub s_f: f64,
    pub s_cond_m: f64,
    pub s_cond_f: f64,
    pub sigma: f64,
    pub sigma_m: f64,
    pub j: f64,
    pub j_m: f64,
    pub edot_mf: f64,
    pub edot_m: f64,
    pub edot_f: f64,
    pub qdot_f: f64,
    pub ds_mf_dt: f64,
    pub ds_m_dt: f64,
}

pub const CSV_HEADER: [&str; 27] = [
    "time", "E_mf", "E_m", "E_f", "Qdot_m", "Qdot_mC", "Qdot_mH", "Qdot_V", "Qdot_VC", "Qdot_VH", "P_m", "P_f", "S_mf",
    "S_m", "S_f", "S_cond_m", "S_cond_f", "sigma", "sigma_m", "J", "J_m", "Edot_mf", "Edot_m", "Edot_f", "Qdot_f",
    "dS_mf_dt", "dS_m_dt",
];

impl FluxRecord {
    pub fn values(&self) -> [f64; 27] {
        [
            self.time,
            self.e_mf,
            self.e_m,
            self.e_f,
            self.qdot_m,
            self.qdot_mc,
            self.qdot_mh,
            self.qdot_v,
            self.qdot_vc,
            self.qdot_vh,
            self.p_m,
            self.p_f,
            self.s_mf,
            self.s_m,
            self.s_f,
            self.s_cond_m,
            self.s_cond_f,
            self.sigma,
            self.sigma_m,
            self.j,
            self.j_m,
            self.edot_mf,
            self.edot_m,
            self.edot_f,
            self.qdot_f,
            self.ds_mf_dt,
            self.ds_m_dt,
        ]
    }

    pub fn qdot_c(&self) -> f64 {
        self.qdot_mc + self.qdot_vc
    }

    pub fn qdot_h(&self) -> f64 {
        self.qdot_mh + self.qdot_vh
    }
}

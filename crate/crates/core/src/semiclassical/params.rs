// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::SemiclassicalError;
use crate::model::{reservoir_temperature, ModelParams, Temperature};

/// Three-level matter driven by a classical field of coupling `lambda_sc`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiclassicalParams {
    pub gamma01: f64,
    pub gamma02: f64,
    pub n01: f64,
    pub n02: f64,
    pub lambda_sc: f64,
    /// Drive frequency.
    pub omega: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl SemiclassicalParams {
    /// Classical limit of the quantum model for a field of amplitude |alpha|: lambda_sc = lambda |alpha|.
    pub fn from_quantum(p: &ModelParams, alpha_abs: f64) -> Self {
        Self {
            gamma01: p.gamma01,
            gamma02: p.gamma02,
            n01: p.n01,
            n02: p.n02,
            lambda_sc: p.lambda * alpha_abs,
            omega: p.omega_f,
            omega0: p.omega0,
            omega1: p.omega1,
            omega2: p.omega2,
        }
    }

    pub fn reference(lambda_sc: f64) -> Self {
        Self::from_quantum(&ModelParams::reference(), lambda_sc)
    }

    pub fn validate(&self) -> Result<(), SemiclassicalError> {
        let all = [
            ("gamma01", self.gamma01),
            ("gamma02", self.gamma02),
            ("n01", self.n01),
            ("n02", self.n02),
            ("lambda_sc", self.lambda_sc),
            ("omega", self.omega),
            ("omega0", self.omega0),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(SemiclassicalError::InvalidParameter { name, reason: format!("not finite ({v})") });
            }
        }
        for (name, v) in &all[..5] {
            if *v < 0.0 {
                return Err(SemiclassicalError::InvalidParameter { name, reason: format!("must be >= 0, got {v}") });
            }
        }
        if !(self.gamma01 > 0.0 && self.gamma02 > 0.0) {
            return Err(SemiclassicalError::InvalidParameter {
                name: "gamma",
                reason: "both reservoirs must be coupled for a unique steady state".into(),
            });
        }
        Ok(())
    }

    /// Decay rate of rho_12: Gamma01 (n01+1) + Gamma02 (n02+1).
    pub fn gamma(&self) -> f64 {
        self.gamma01 * (self.n01 + 1.0) + self.gamma02 * (self.n02 + 1.0)
    }

    pub fn max_rate(&self) -> f64 {
        2.0 * (self.gamma01 * (self.n01 + 1.0)).max(self.gamma02 * (self.n02 + 1.0)) + self.gamma01 * self.n01 + self.gamma02 * self.n02
    }

    pub fn omega_s(&self) -> f64 {
        self.omega1 - self.omega2
    }

    pub fn omega_h(&self) -> f64 {
        self.omega1 - self.omega0
    }

    pub fn omega_c(&self) -> f64 {
        self.omega2 - self.omega0
    }

    pub fn t_hot(&self) -> Result<Temperature, SemiclassicalError> {
        Ok(reservoir_temperature(self.omega_h(), self.n01)?)
    }

    pub fn t_cold(&self) -> Result<Temperature, SemiclassicalError> {
        Ok(reservoir_temperature(self.omega_c(), self.n02)?)
    }

    pub fn carnot_bound(&self) -> Result<f64, SemiclassicalError> {
        Ok(1.0 - self.t_cold()?.value / self.t_hot()?.value)
    }
}

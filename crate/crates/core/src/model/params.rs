// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Physical constants of the three-level maser plus the Fock cutoff.
///
/// Units are atomic (hbar = k_B = 1). `n_fock` is the number of retained
/// Fock states, so photon numbers run over `0..n_fock`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelParams {
    pub gamma01: f64,
    pub gamma02: f64,
    pub n01: f64,
    pub n02: f64,
    pub lambda: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega_f: f64,
    pub n_fock: usize,
    pub resonant: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::reference()
    }
}

/// Temperature of a bosonic reservoir. `zero` marks the n = 0 limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Temperature {
    pub value: f64,
    pub zero: bool,
}

impl Temperature {
    pub fn beta(&self) -> f64 {
        if self.zero {
            f64::INFINITY
        } else {
            1.0 / self.value
        }
    }
}

/// T = omega / ln(1 + 1/n).
pub fn reservoir_temperature(omega: f64, n: f64) -> Result<Temperature, ModelError> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(ModelError::InvalidParameter { name: "omega", reason: format!("must be positive, got {omega}") });
    }
    if !(n >= 0.0) || !n.is_finite() {
        return Err(ModelError::InvalidParameter { name: "n", reason: format!("must be non-negative, got {n}") });
    }
    if n == 0.0 {
        return Ok(Temperature { value: 0.0, zero: true });
    }
    Ok(Temperature { value: omega / (1.0 / n).ln_1p(), zero: false })
}

/// beta * flux with the convention that an infinite beta times a zero flux is zero.
pub fn weighted_flux(beta: f64, flux: f64) -> f64 {
    if flux == 0.0 {
        0.0
    } else {
        beta * flux
    }
}

impl ModelParams {
    /// Parameter set used throughout the reference runs.
    pub fn reference() -> Self {
        Self {
            gamma01: 0.001,
            gamma02: 0.001,
            n01: 10.0,
            n02: 0.1,
            lambda: 1.0,
            omega0: 0.0,
            omega1: 0.1,
            omega2: 0.025,
            omega_f: 0.075,
            n_fock: 30,
            resonant: true,
        }
    }

    pub fn with_n_fock(&self, n_fock: usize) -> Self {
        Self { n_fock, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = [
            ("gamma01", self.gamma01),
            ("gamma02", self.gamma02),
            ("n01", self.n01),
            ("n02", self.n02),
            ("lambda", self.lambda),
            ("omega0", self.omega0),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("omega_f", self.omega_f),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(ModelError::InvalidParameter { name, reason: format!("not finite ({v})") });
            }
        }
        for (name, v) in [("gamma01", self.gamma01), ("gamma02", self.gamma02), ("n01", self.n01), ("n02", self.n02)] {
            if v < 0.0 {
                return Err(ModelError::InvalidParameter { name, reason: format!("must be >= 0, got {v}") });
            }
        }
        if self.lambda < 0.0 {
            return Err(ModelError::InvalidParameter { name: "lambda", reason: format!("must be >= 0, got {}", self.lambda) });
        }
        if self.n_fock < 2 {
            return Err(ModelError::CutoffTooSmall { min: 2, got: self.n_fock });
        }
        for (name, v) in [("omega_c", self.omega_c()), ("omega_h", self.omega_h()), ("omega_s", self.omega_s())] {
            if !(v > 0.0) {
                return Err(ModelError::InvalidParameter { name, reason: format!("level ordering requires {name} > 0, got {v}") });
            }
        }
        if self.resonant && (self.omega_s() - self.omega_f).abs() > 1e-12 {
            return Err(ModelError::InvalidParameter {
                name: "omega_f",
                reason: format!("resonant flag set but omega1 - omega2 - omega_f = {:e}", self.omega_s() - self.omega_f),
            });
        }
        Ok(())
    }

    /// omega_C = omega2 - omega0.
    pub fn omega_c(&self) -> f64 {
        self.omega2 - self.omega0
    }

    /// omega_H = omega_p = omega1 - omega0.
    pub fn omega_h(&self) -> f64 {
        self.omega1 - self.omega0
    }

    /// omega_s = omega1 - omega2.
    pub fn omega_s(&self) -> f64 {
        self.omega1 - self.omega2
    }

    pub fn t_cold(&self) -> Result<Temperature, ModelError> {
        reservoir_temperature(self.omega_c(), self.n02)
    }

    pub fn t_hot(&self) -> Result<Temperature, ModelError> {
        reservoir_temperature(self.omega_h(), self.n01)
    }

    /// 1 - T_C/T_H.
    pub fn carnot_bound(&self) -> Result<f64, ModelError> {
        let (tc, th) = (self.t_cold()?, self.t_hot()?);
        if th.zero {
            return Err(ModelError::InvalidParameter { name: "n01", reason: "hot reservoir at zero temperature".into() });
        }
        Ok(1.0 - tc.value / th.value)
    }

    /// omega_s / omega_p.
    pub fn scovil_efficiency(&self) -> f64 {
        self.omega_s() / self.omega_h()
    }

    /// (Gamma01 n01 + Gamma02 n02)/2, which is Gamma (n01 + n02)/2 for equal rates.
    pub fn gamma_eff(&self) -> f64 {
        0.5 * (self.gamma01 * self.n01 + self.gamma02 * self.n02)
    }

    /// Largest dissipative rate, 2 Gamma (n + 1) over both reservoirs.
    pub fn max_rate(&self) -> f64 {
        (2.0 * self.gamma01 * (self.n01 + 1.0)).max(2.0 * self.gamma02 * (self.n02 + 1.0))
    }

    /// min(0.01/lambda, 0.01/(Gamma (n_max + 1))).
    pub fn default_step(&self) -> f64 {
        let a = if self.lambda > 0.0 { 0.01 / self.lambda } else { f64::INFINITY };
        let g = (self.gamma01 * (self.n01 + 1.0)).max(self.gamma02 * (self.n02 + 1.0));
        let b = if g > 0.0 { 0.01 / g } else { f64::INFINITY };
        let h = a.min(b);
        if h.is_finite() {
            h
        } else {
            0.01
        }
    }
}

/// Fock cutoff recommended for a coherent input of mean photon number `nbar`.
pub fn recommended_cutoff(nbar: f64) -> usize {
    let n = nbar + 8.0 * nbar.sqrt() + 20.0;
    (n.ceil() as usize).max(30)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_temperatures() {
        let p = ModelParams::reference();
        p.validate().unwrap();
        let th = p.t_hot().unwrap().value;
        let tc = p.t_cold().unwrap().value;
        assert!((th - 0.1 / 1.1f64.ln()).abs() < 1e-15);
        assert!((th - 1.04921).abs() < 1e-5);
        assert!((tc - 0.025 / 11f64.ln()).abs() < 1e-15);
        assert!((tc - 0.0104258).abs() < 1e-7);
        assert!((p.carnot_bound().unwrap() - 0.99006).abs() < 1e-5);
        assert!((p.scovil_efficiency() - 0.75).abs() < 1e-15);
        assert!((p.gamma_eff() - 0.00505).abs() < 1e-15);
    }

    #[test]
    fn zero_temperature_flag() {
        let t = reservoir_temperature(0.1, 0.0).unwrap();
        assert!(t.zero);
        assert_eq!(t.value, 0.0);
        assert_eq!(t.beta(), f64::INFINITY);
        assert_eq!(weighted_flux(t.beta(), 0.0), 0.0);
    }

    #[test]
    fn validation() {
        let mut p = ModelParams::reference();
        p.omega_f = 0.08;
        assert!(p.validate().is_err());
        p.resonant = false;
        assert!(p.validate().is_ok());
        let mut q = ModelParams::reference();
        q.gamma01 = -1.0;
        assert!(q.validate().is_err());
        assert!(ModelParams::reference().with_n_fock(1).validate().is_err());
    }

    #[test]
    fn cutoff_rule() {
        assert_eq!(recommended_cutoff(0.0), 30);
        assert_eq!(recommended_cutoff(100.0), 200);
    }
}

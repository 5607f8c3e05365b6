// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Equations of motion of the driven three-level matter in the rotating frame.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::SemiclassicalError;
use crate::integrator::{Flow, Rk4};
use crate::linalg::{eigvalsh, ComplexMatrix, POSITIVITY_FLOOR};
use crate::model::operators::transition;
use crate::model::{Channel, DenseLindblad, Reservoir};
use crate::scalar::{lit, Real};
use crate::semiclassical::params::SemiclassicalParams;

#[derive(Clone, Debug, PartialEq)]
pub struct ScState {
    pub rho: ComplexMatrix<f64>,
    pub time: f64,
}

impl ScState {
    pub fn new(rho: ComplexMatrix<f64>, time: f64) -> Result<Self, SemiclassicalError> {
        let s = Self { rho, time };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SemiclassicalError> {
        let invalid = |reason: String| SemiclassicalError::InvalidParameter { name: "rho", reason };
        if self.rho.rows() != 3 || self.rho.cols() != 3 {
            return Err(invalid(format!("expected 3x3, got {}x{}", self.rho.rows(), self.rho.cols())));
        }
        let tr = self.rho.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(invalid(format!("trace {tr}")));
        }
        let min = eigvalsh(&self.rho)?.into_iter().fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_FLOOR {
            return Err(invalid(format!("eigenvalue {min:e}")));
        }
        Ok(())
    }
}

/// The nine element equations, written out.
pub fn sc_derivative<T: Real>(rho: &ComplexMatrix<T>, p: &SemiclassicalParams) -> ComplexMatrix<T> {
    let two = lit::<T>(2.0);
    let g01 = lit::<T>(p.gamma01);
    let g02 = lit::<T>(p.gamma02);
    let n01 = lit::<T>(p.n01);
    let n02 = lit::<T>(p.n02);
    let il = Complex::new(T::zero(), lit::<T>(p.lambda_sc));
    let gamma = g01 * (n01 + T::one()) + g02 * (n02 + T::one());
    let r = |i: usize, j: usize| rho[(i, j)];

    let d00 = (r(1, 1) * (g01 * (n01 + T::one())) - r(0, 0) * (g01 * n01) - r(0, 0) * (g02 * n02)
        + r(2, 2) * (g02 * (n02 + T::one())))
        * two;
    let d11 = -il * r(2, 1) + il * r(1, 2) - r(1, 1) * (two * g01 * (n01 + T::one())) + r(0, 0) * (two * g01 * n01);
    let d22 = -il * r(1, 2) + il * r(2, 1) - r(2, 2) * (two * g02 * (n02 + T::one())) + r(0, 0) * (two * g02 * n02);
    let d12 = il * (r(1, 1) - r(2, 2)) - r(1, 2) * gamma;
    let d01 = il * r(0, 2) - r(0, 1) * (g01 * (two * n01 + T::one()) + g02 * n02);
    let d02 = il * r(0, 1) - r(0, 2) * (g02 * (two * n02 + T::one()) + g01 * n01);

    let mut out = ComplexMatrix::zeros(3, 3);
    out[(0, 0)] = d00;
    out[(1, 1)] = d11;
    out[(2, 2)] = d22;
    out[(1, 2)] = d12;
    out[(2, 1)] = d12.conj();
    out[(0, 1)] = d01;
    out[(1, 0)] = d01.conj();
    out[(0, 2)] = d02;
    out[(2, 0)] = d02.conj();
    out
}

/// The same dynamics as a Lindblad generator with V = lambda_sc (sigma_21 + sigma_12).
pub fn sc_lindblad<T: Real>(p: &SemiclassicalParams) -> DenseLindblad<T> {
    let s12 = transition::<T>(3, 1, 2);
    let v = (&s12 + &s12.dagger()).scale_real(lit(p.lambda_sc));
    DenseLindblad {
        hamiltonian: v,
        channels: vec![
            Channel::new(Reservoir::Cold, lit(p.gamma02 * (p.n02 + 1.0)), transition(3, 0, 2)),
            Channel::new(Reservoir::Cold, lit(p.gamma02 * p.n02), transition(3, 2, 0)),
            Channel::new(Reservoir::Hot, lit(p.gamma01 * (p.n01 + 1.0)), transition(3, 0, 1)),
            Channel::new(Reservoir::Hot, lit(p.gamma01 * p.n01), transition(3, 1, 0)),
        ],
    }
}

pub struct ScFlow {
    pub params: SemiclassicalParams,
}

impl<T: Real> Flow<T> for ScFlow {
    fn dim(&self) -> usize {
        9
    }
    fn eval(&self, y: &[Complex<T>], dy: &mut [Complex<T>]) {
        let rho = ComplexMatrix::from_vec(3, 3, y.to_vec()).expect("nine entries");
        dy.copy_from_slice(sc_derivative(&rho, &self.params).as_slice());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScPropagateConfig {
    /// Step size; 0 selects [`default_sc_step`].
    pub step_h: f64,
    pub t_max: f64,
    /// Convergence is tested every `check_every` steps.
    pub check_every: usize,
    /// Stop once max |drho/dt| falls below this. `None` runs to `t_max`.
    pub rate_tolerance: Option<f64>,
}

impl Default for ScPropagateConfig {
    fn default() -> Self {
        Self { step_h: 0.0, t_max: 1e7, check_every: 1000, rate_tolerance: Some(1e-14) }
    }
}

/// 0.25 over the fastest scale of the nine equations.
pub fn default_sc_step(p: &SemiclassicalParams) -> f64 {
    0.25 / (2.0 * p.lambda_sc + p.max_rate()).max(1e-12)
}

#[derive(Clone, Debug)]
pub struct ScTrajectory {
    pub final_state: ScState,
    /// (time, max |drho/dt|) at each check.
    pub checks: Vec<(f64, f64)>,
    pub converged: bool,
}

pub fn sc_propagate(rho0: &ScState, p: &SemiclassicalParams, cfg: &ScPropagateConfig) -> Result<ScTrajectory, SemiclassicalError> {
    p.validate()?;
    rho0.validate()?;
    let h = if cfg.step_h > 0.0 { cfg.step_h } else { default_sc_step(p) };
    if !(cfg.t_max >= 0.0) || cfg.check_every == 0 {
        return Err(SemiclassicalError::InvalidParameter { name: "config", reason: format!("{cfg:?}") });
    }
    let flow = ScFlow { params: *p };
    let mut rk = Rk4::<f64>::new(9);
    let mut y = rho0.rho.as_slice().to_vec();
    let steps = (cfg.t_max / h).round() as usize;
    let mut checks = Vec::new();
    let mut converged = false;
    let mut step = 0usize;
    let rate_of = |y: &[Complex<f64>]| {
        let rho = ComplexMatrix::from_vec(3, 3, y.to_vec()).expect("nine entries");
        sc_derivative(&rho, p).max_abs()
    };
    while step < steps {
        let chunk = cfg.check_every.min(steps - step);
        rk.integrate(&flow, &mut y, h, chunk);
        step += chunk;
        let rate = rate_of(&y);
        checks.push((rho0.time + step as f64 * h, rate));
        if cfg.rate_tolerance.is_some_and(|tol| rate < tol) {
            converged = true;
            break;
        }
    }
    let time = rho0.time + step as f64 * h;
    if let Some(tol) = cfg.rate_tolerance {
        if !converged {
            let rate = rate_of(&y);
            if rate >= tol {
                return Err(SemiclassicalError::NotConverged { t_max: cfg.t_max, rate });
            }
            converged = true;
        }
    }
    let rho = ComplexMatrix::from_vec(3, 3, y).expect("nine entries");
    Ok(ScTrajectory { final_state: ScState { rho, time }, checks, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_state() -> ComplexMatrix<f64> {
        let mut r = ComplexMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]);
        r[(1, 2)] = Complex::new(0.05, 0.1);
        r[(2, 1)] = Complex::new(0.05, -0.1);
        r[(0, 1)] = Complex::new(-0.1, 0.02);
        r[(1, 0)] = Complex::new(-0.1, -0.02);
        r[(0, 2)] = Complex::new(0.03, 0.07);
        r[(2, 0)] = Complex::new(0.03, -0.07);
        r
    }

    #[test]
    fn matches_lindblad_form() {
        let p = SemiclassicalParams { lambda_sc: 0.7, n02: 0.4, gamma02: 0.003, ..SemiclassicalParams::reference(1.0) };
        let rho = test_state();
        let a = sc_derivative(&rho, &p);
        let b = sc_lindblad::<f64>(&p).apply(&rho).unwrap();
        assert!((&a - &b).max_abs() < 1e-16);
        assert!(a.trace().norm() < 1e-15);
        assert!(a.hermiticity_error() < 1e-17);
    }

    #[test]
    fn rate_equation_fixed_point() {
        let p = SemiclassicalParams { lambda_sc: 0.0, ..SemiclassicalParams::reference(0.0) };
        let zh = p.n01 / (p.n01 + 1.0);
        let zc = p.n02 / (p.n02 + 1.0);
        let z = 1.0 + zh + zc;
        let rho = ComplexMatrix::from_real_diagonal(&[1.0 / z, zh / z, zc / z]);
        assert!(sc_derivative(&rho, &p).max_abs() < 1e-16);
    }

    #[test]
    fn matter_coherences_decay() {
        let p = SemiclassicalParams::reference(1.0);
        let rho0 = ScState::new(test_state(), 0.0).unwrap();
        let cfg = ScPropagateConfig { t_max: 4000.0, rate_tolerance: None, ..Default::default() };
        let traj = sc_propagate(&rho0, &p, &cfg).unwrap();
        let r = &traj.final_state.rho;
        assert!(r[(0, 1)].norm() < 1e-15 && r[(0, 2)].norm() < 1e-15);
        assert!((r.trace().re - 1.0).abs() < 1e-12);
    }
}

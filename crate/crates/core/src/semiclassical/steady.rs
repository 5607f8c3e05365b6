// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form steady state of the driven three-level matter.
//!
//! At steady state the outer coherences vanish and rho_12 = i D/F is purely
//! imaginary, so the stationary problem reduces to a 4x4 real system in
//! (rho_00, rho_11, rho_22, Im rho_12).

use num_complex::Complex;
use num_traits::Num;
use serde::Serialize;

use crate::error::SemiclassicalError;
use crate::linalg::{solve_dense, ComplexMatrix};
use crate::semiclassical::dynamics::{sc_derivative, sc_lindblad};
use crate::model::Reservoir;
use crate::semiclassical::params::SemiclassicalParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// n01 = n02: no coherence, rho_11 = rho_22.
    A,
    /// n02 > n01: attenuation.
    B,
    /// n01 > n02: amplification.
    C,
}

impl Case {
    pub fn classify(n01: f64, n02: f64) -> Self {
        if n01 > n02 {
            Case::C
        } else if n02 > n01 {
            Case::B
        } else {
            Case::A
        }
    }

    pub fn letter(self) -> char {
        match self {
            Case::A => 'A',
            Case::B => 'B',
            Case::C => 'C',
        }
    }
}

/// rho_00 = A/F, rho_11 = B/F, rho_22 = C/F, rho_12 = i D/F.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteadyConstants<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub f: T,
}

/// Constants over any field, so that exact rationals can check A + B + C = F.
pub fn closed_form<T: Clone + Num>(g01: T, g02: T, n01: T, n02: T, lambda: T) -> SteadyConstants<T> {
    let one = T::one();
    let l2 = lambda.clone() * lambda.clone();
    let m01 = n01.clone() + one.clone();
    let m02 = n02.clone() + one;
    let gamma = g01.clone() * m01.clone() + g02.clone() * m02.clone();
    let g01g02 = g01.clone() * g02.clone();
    let pump = l2.clone() * (g01.clone() * n01.clone() + g02.clone() * n02.clone());

    let a = gamma * (g01g02.clone() * m01.clone() * m02.clone() + l2);
    let b = pump.clone()
        + g01.clone() * g01g02.clone() * n01.clone() * m01.clone() * m02.clone()
        + g01g02.clone() * g02.clone() * n01.clone() * m02.clone() * m02.clone();
    let c = pump
        + g01.clone() * g01g02.clone() * n02.clone() * m01.clone() * m01.clone()
        + g01g02.clone() * g02 * n02.clone() * m02 * m01;
    let d = lambda * g01g02 * (n01 - n02);
    let f = a.clone() + b.clone() + c.clone();
    SteadyConstants { a, b, c, d, f }
}

pub fn constants(p: &SemiclassicalParams) -> SteadyConstants<f64> {
    closed_form(p.gamma01, p.gamma02, p.n01, p.n02, p.lambda_sc)
}

/// Solves the stationary equations directly with Gaussian elimination.
///
/// Returns (rho_00, rho_11, rho_22, Im rho_12).
pub fn solve_stationary(p: &SemiclassicalParams) -> Result<[f64; 4], SemiclassicalError> {
    solve_system(p, 1.0)
}

/// `coherence_scale` divides the rho_12 balance row by that factor; 1 gives the
/// physical system, `lambda_sc` reproduces the literature polynomials.
pub(crate) fn solve_system(p: &SemiclassicalParams, coherence_scale: f64) -> Result<[f64; 4], SemiclassicalError> {
    let l = p.lambda_sc;
    let h_out = 2.0 * p.gamma01 * (p.n01 + 1.0);
    let h_in = 2.0 * p.gamma01 * p.n01;
    let c_out = 2.0 * p.gamma02 * (p.n02 + 1.0);
    let c_in = 2.0 * p.gamma02 * p.n02;
    #[rustfmt::skip]
    let a = [
        1.0, 1.0, 1.0, 0.0,
        h_in, -h_out, 0.0, -2.0 * l,
        c_in, 0.0, -c_out, 2.0 * l,
        0.0, l, -l, -p.gamma() / coherence_scale,
    ];
    let x = solve_dense(&a, &[1.0, 0.0, 0.0, 0.0])?;
    Ok([x[0], x[1], x[2], x[3]])
}

/// Alicki fluxes at steady state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScFluxes {
    /// Power delivered by the drive.
    pub p: f64,
    pub qdot_h: f64,
    pub qdot_c: f64,
    /// Power on the matter from the coupling.
    pub p_m: f64,
    /// Qdot_H + Qdot_C + P.
    pub edot: f64,
}

/// Closed-form fluxes from the constants.
pub fn sc_fluxes(k: &SteadyConstants<f64>, p: &SemiclassicalParams) -> ScFluxes {
    let x = 2.0 * p.lambda_sc * k.d / k.f;
    let qdot_h = x * p.omega_h();
    let qdot_c = -x * p.omega_c();
    let pw = -x * p.omega;
    ScFluxes { p: pw, qdot_h, qdot_c, p_m: -x * p.omega_s(), edot: qdot_h + qdot_c + pw }
}

/// Fluxes evaluated from a state through the dissipators, with Tr{L_dX[rho] V}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StateFluxes {
    pub fluxes: ScFluxes,
    pub qdot_vh: f64,
    pub qdot_vc: f64,
}

pub fn sc_fluxes_from_state(rho: &ComplexMatrix<f64>, p: &SemiclassicalParams) -> Result<StateFluxes, SemiclassicalError> {
    let model = sc_lindblad::<f64>(p);
    let h_m = ComplexMatrix::from_real_diagonal(&[p.omega0, p.omega1, p.omega2]);
    let dh = model.dissipator(rho, Some(Reservoir::Hot))?;
    let dc = model.dissipator(rho, Some(Reservoir::Cold))?;
    let qdot_h = dh.trace_product(&h_m).re;
    let qdot_c = dc.trace_product(&h_m).re;
    let coherent = model.hamiltonian.commutator(rho).scale(Complex::new(0.0, -1.0));
    let p_m = coherent.trace_product(&h_m).re;
    let pw = -2.0 * p.lambda_sc * p.omega * rho[(1, 2)].im;
    Ok(StateFluxes {
        fluxes: ScFluxes { p: pw, qdot_h, qdot_c, p_m, edot: qdot_h + qdot_c + pw },
        qdot_vh: dh.trace_product(&model.hamiltonian).re,
        qdot_vc: dc.trace_product(&model.hamiltonian).re,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScEfficiency {
    pub eta: f64,
    pub carnot: f64,
    pub exceeds_carnot: bool,
}

/// -P_m / Qdot_H, which reduces to omega_s / omega_p.
pub fn sc_efficiency(sol: &SteadyStateSolution, p: &SemiclassicalParams) -> Result<ScEfficiency, SemiclassicalError> {
    if sol.case != Case::C || !(sol.fluxes.qdot_h > 0.0) {
        return Err(SemiclassicalError::NotAmplifier { case: sol.case.letter() });
    }
    let eta = -sol.fluxes.p_m / sol.fluxes.qdot_h;
    let carnot = p.carnot_bound()?;
    Ok(ScEfficiency { eta, carnot, exceeds_carnot: eta > carnot })
}

/// Boltzmann-weight prediction of rho_11/rho_22 at the reservoir temperatures.
pub fn scovil_inversion_ratio<T: Clone + Num>(n01: T, n02: T) -> T {
    let one = T::one();
    n01.clone() * (n02.clone() + one.clone()) / (n02 * (n01 + one))
}

#[derive(Clone, Debug)]
pub struct SteadyStateSolution {
    pub case: Case,
    pub constants: SteadyConstants<f64>,
    pub rho_ss: ComplexMatrix<f64>,
    /// Phase of rho_12.
    pub phi: f64,
    pub fluxes: ScFluxes,
    /// rho_11 / rho_22 = B / C.
    pub r: f64,
    /// Present in case C.
    pub eta: Option<f64>,
}

impl SteadyStateSolution {
    pub fn coherence(&self) -> f64 {
        self.constants.d.abs() / self.constants.f
    }
}

pub fn steady_matrix(k: &SteadyConstants<f64>) -> ComplexMatrix<f64> {
    let mut rho = ComplexMatrix::from_real_diagonal(&[k.a / k.f, k.b / k.f, k.c / k.f]);
    rho[(1, 2)] = Complex::new(0.0, k.d / k.f);
    rho[(2, 1)] = Complex::new(0.0, -k.d / k.f);
    rho
}

pub fn sc_steady_state(p: &SemiclassicalParams) -> Result<SteadyStateSolution, SemiclassicalError> {
    p.validate()?;
    let case = Case::classify(p.n01, p.n02);
    let k = constants(p);
    let rho_ss = steady_matrix(&k);
    let fluxes = sc_fluxes(&k, p);
    let eta = (case == Case::C && fluxes.qdot_h > 0.0).then(|| -fluxes.p_m / fluxes.qdot_h);
    Ok(SteadyStateSolution {
        case,
        phi: k.d.atan2(0.0),
        r: k.b / k.c,
        constants: k,
        rho_ss,
        fluxes,
        eta,
    })
}

/// max |drho/dt| at the closed-form state, and the scale it should be compared to.
pub fn steady_residual(sol: &SteadyStateSolution, p: &SemiclassicalParams) -> (f64, f64) {
    let res = sc_derivative(&sol.rho_ss, p).max_abs();
    let scale = p.max_rate().max(p.lambda_sc);
    (res, scale)
}

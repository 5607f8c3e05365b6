// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Energies, heat fluxes, powers and entropy production.

use num_complex::Complex;
use serde::Serialize;

use crate::error::ThermoError;
use crate::linalg::entropy::{entropy_of_spectrum, entropy_rate_with};
use crate::linalg::{eigh, von_neumann_entropy, BipartiteDims, ComplexMatrix, Subsystem};
use crate::model::blocks::{diagonal_entropy_rate, slot_photon};
use crate::model::params::weighted_flux;
use crate::model::{BlockGenerator, BlockState, DenseLindblad, ModelParams, OperatorSet, Reservoir, Temperature};
use crate::thermo::record::FluxRecord;

/// Relative size of an imaginary part tolerated in a trace that must be real.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Eigenvalue floor before the logarithm in dS/dt.
pub const LOG_FLOOR: f64 = 1e-300;

/// Entropy productions below this are reported as second-law violations.
pub const SECOND_LAW_HARD_LIMIT: f64 = -1e-6;

/// Fails when sigma is below [`SECOND_LAW_HARD_LIMIT`]. Only meaningful along
/// trajectories; an arbitrary state can have negative sigma.
pub fn check_second_law(rec: &FluxRecord) -> Result<(), ThermoError> {
    if rec.sigma < SECOND_LAW_HARD_LIMIT {
        return Err(ThermoError::SecondLaw { time: rec.time, sigma: rec.sigma });
    }
    Ok(())
}

fn real_part(z: Complex<f64>, scale: f64) -> Result<f64, ThermoError> {
    if z.im.abs() > IMAGINARY_TOLERANCE * scale.max(1.0) {
        return Err(ThermoError::Imaginary { real: z.re, imag: z.im });
    }
    Ok(z.re)
}

/// Tr{D[rho] H_part}.
pub fn heat_flux(dissipator_output: &ComplexMatrix<f64>, h_part: &ComplexMatrix<f64>) -> Result<f64, ThermoError> {
    let scale = dissipator_output.max_abs() * h_part.max_abs() * dissipator_output.rows() as f64;
    real_part(dissipator_output.trace_product(h_part), scale)
}

/// -i Tr{rho [H_part, V]}.
pub fn power(rho: &ComplexMatrix<f64>, h_part: &ComplexMatrix<f64>, v: &ComplexMatrix<f64>) -> Result<f64, ThermoError> {
    let c = h_part.commutator(v);
    let scale = rho.max_abs() * c.max_abs() * rho.rows() as f64;
    let t = rho.trace_product(&c);
    real_part(Complex::new(t.im, -t.re), scale)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct HeatFluxes {
    pub qdot_mc: f64,
    pub qdot_mh: f64,
    pub qdot_vc: f64,
    pub qdot_vh: f64,
    pub qdot_f: f64,
}

impl HeatFluxes {
    pub fn qdot_c(&self) -> f64 {
        self.qdot_mc + self.qdot_vc
    }
    pub fn qdot_h(&self) -> f64 {
        self.qdot_mh + self.qdot_vh
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EntropyProduction {
    pub sigma: f64,
    pub sigma_m: f64,
    pub j: f64,
    pub j_m: f64,
}

/// sigma = dS_mf/dt + J and sigma_m = dS_m/dt + J_m with J = -beta_C Qdot_C - beta_H Qdot_H.
pub fn entropy_production(
    ds_mf_dt: f64,
    ds_m_dt: f64,
    q: &HeatFluxes,
    t_cold: Temperature,
    t_hot: Temperature,
) -> EntropyProduction {
    let (bc, bh) = (t_cold.beta(), t_hot.beta());
    let j = -weighted_flux(bc, q.qdot_c()) - weighted_flux(bh, q.qdot_h());
    let j_m = -weighted_flux(bc, q.qdot_mc) - weighted_flux(bh, q.qdot_mh);
    EntropyProduction { sigma: ds_mf_dt + j, sigma_m: ds_m_dt + j_m, j, j_m }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Efficiency {
    pub eta: f64,
    pub carnot: f64,
    pub exceeds_carnot: bool,
}

/// eta = -P_m / Qdot_mH.
pub fn engine_efficiency(p_m: f64, qdot_mh: f64, carnot: f64) -> Result<Efficiency, ThermoError> {
    if !(qdot_mh > 0.0) {
        return Err(ThermoError::NotEngine { qdot_mh });
    }
    let eta = -p_m / qdot_mh;
    Ok(Efficiency { eta, carnot, exceeds_carnot: eta > carnot })
}

/// Which entropies a record computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMode {
    /// S_mf, S_m, S_f and their rates (sigma included).
    Full,
    /// Skip every entropy; the entropy columns are NaN.
    Skip,
}

/// Temperatures and constants shared by every record of a run.
#[derive(Clone, Debug)]
pub struct ThermoContext {
    pub params: ModelParams,
    pub t_cold: Temperature,
    pub t_hot: Temperature,
}

impl ThermoContext {
    pub fn new(params: &ModelParams) -> Result<Self, ThermoError> {
        Ok(Self { params: params.clone(), t_cold: params.t_cold()?, t_hot: params.t_hot()? })
    }

    fn omegas(&self) -> [f64; 3] {
        [self.params.omega0, self.params.omega1, self.params.omega2]
    }

    /// (Tr rho H_m, Tr rho H_f, Tr rho V) from the order-0 blocks; also valid for derivatives.
    pub fn block_energies(&self, state: &BlockState<f64>, generator: &BlockGenerator<f64>) -> (f64, f64, f64) {
        let n = state.n_fock();
        let w = self.omegas();
        let (mut em, mut ef, mut ev) = (0.0, 0.0, 0.0);
        for k in 0..=n {
            let b = state.block(0, k);
            for a in 0..3 {
                if let Some(np) = slot_photon(a, k, n) {
                    let p = b[4 * a].re;
                    em += w[a] * p;
                    ef += self.params.omega_f * np as f64 * p;
                }
            }
            ev += 2.0 * generator.coupling(k) * b[5].re;
        }
        (em, ef, ev)
    }

    /// (P_m, P_f).
    pub fn block_powers(&self, state: &BlockState<f64>, generator: &BlockGenerator<f64>) -> (f64, f64) {
        let n = state.n_fock();
        let mut x = 0.0;
        for k in 0..=n {
            x += generator.coupling(k) * state.block(0, k)[5].im;
        }
        (-2.0 * self.params.omega_s() * x, 2.0 * self.params.omega_f * x)
    }

    pub fn block_heat(&self, state: &BlockState<f64>, generator: &BlockGenerator<f64>) -> HeatFluxes {
        let n = state.n_fock();
        let w = self.omegas();
        let mut out = HeatFluxes::default();
        for res in [Reservoir::Cold, Reservoir::Hot] {
            let (mut qm, mut qv, mut qf) = (0.0, 0.0, 0.0);
            for k in 0..=n {
                let d = generator.dissipator_block(state, k, res);
                for a in 0..3 {
                    if let Some(np) = slot_photon(a, k, n) {
                        qm += w[a] * d[4 * a].re;
                        qf += self.params.omega_f * np as f64 * d[4 * a].re;
                    }
                }
                qv += 2.0 * generator.coupling(k) * d[5].re;
            }
            match res {
                Reservoir::Cold => {
                    out.qdot_mc = qm;
                    out.qdot_vc = qv;
                }
                Reservoir::Hot => {
                    out.qdot_mh = qm;
                    out.qdot_vh = qv;
                }
            }
            out.qdot_f += qf;
        }
        out
    }

    /// Full ledger of one block-form sample.
    pub fn record(
        &self,
        time: f64,
        state: &BlockState<f64>,
        generator: &BlockGenerator<f64>,
        mode: EntropyMode,
    ) -> Result<FluxRecord, ThermoError> {
        let rate = generator.derivative(state);
        let (e_m, e_f, e_v) = self.block_energies(state, generator);
        let (edot_m, edot_f, edot_v) = self.block_energies(&rate, generator);
        let (p_m, p_f) = self.block_powers(state, generator);
        let q = self.block_heat(state, generator);
        let mut rec = FluxRecord {
            time,
            e_mf: e_m + e_f + e_v,
            e_m,
            e_f,
            qdot_m: q.qdot_mc + q.qdot_mh,
            qdot_mc: q.qdot_mc,
            qdot_mh: q.qdot_mh,
            qdot_v: q.qdot_vc + q.qdot_vh,
            qdot_vc: q.qdot_vc,
            qdot_vh: q.qdot_vh,
            p_m,
            p_f,
            edot_mf: edot_m + edot_f + edot_v,
            edot_m,
            edot_f,
            qdot_f: q.qdot_f,
            ..Default::default()
        };
        match mode {
            EntropyMode::Skip => {
                for v in [
                    &mut rec.s_mf,
                    &mut rec.s_m,
                    &mut rec.s_f,
                    &mut rec.s_cond_m,
                    &mut rec.s_cond_f,
                    &mut rec.sigma,
                    &mut rec.sigma_m,
                    &mut rec.ds_mf_dt,
                    &mut rec.ds_m_dt,
                ] {
                    *v = f64::NAN;
                }
                let ep = entropy_production(0.0, 0.0, &q, self.t_cold, self.t_hot);
                rec.j = ep.j;
                rec.j_m = ep.j_m;
            }
            EntropyMode::Full => {
                let (s_mf, ds_mf_dt) = if state.layout().is_diagonal() {
                    (entropy_of_spectrum(&state.diagonal_spectrum()?)?, diagonal_entropy_rate(state, &rate, LOG_FLOOR)?)
                } else {
                    let rho = state.to_dense();
                    let e = eigh(&rho)?;
                    let s = entropy_of_spectrum(&e.values)?;
                    (s, entropy_rate_with(&e.values, &e.vectors, &rate.to_dense(), LOG_FLOOR)?)
                };
                let rho_m = state.reduced_matter();
                let em = eigh(&rho_m)?;
                let s_m = entropy_of_spectrum(&em.values)?;
                let ds_m_dt = entropy_rate_with(&em.values, &em.vectors, &rate.reduced_matter(), LOG_FLOOR)?;
                let s_f = von_neumann_entropy(&state.reduced_field())?;
                self.fill_entropies(&mut rec, &q, s_mf, s_m, s_f, ds_mf_dt, ds_m_dt)?;
            }
        }
        Ok(rec)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_entropies(
        &self,
        rec: &mut FluxRecord,
        q: &HeatFluxes,
        s_mf: f64,
        s_m: f64,
        s_f: f64,
        ds_mf_dt: f64,
        ds_m_dt: f64,
    ) -> Result<(), ThermoError> {
        let ep = entropy_production(ds_mf_dt, ds_m_dt, q, self.t_cold, self.t_hot);
        rec.s_mf = s_mf;
        rec.s_m = s_m;
        rec.s_f = s_f;
        rec.s_cond_m = s_mf - s_f;
        rec.s_cond_f = s_mf - s_m;
        rec.ds_mf_dt = ds_mf_dt;
        rec.ds_m_dt = ds_m_dt;
        rec.sigma = ep.sigma;
        rec.sigma_m = ep.sigma_m;
        rec.j = ep.j;
        rec.j_m = ep.j_m;
        Ok(())
    }

    /// Same ledger from dense operators; used as an independent cross-check.
    pub fn dense_record(
        &self,
        time: f64,
        rho: &ComplexMatrix<f64>,
        ops: &OperatorSet<f64>,
        model: &DenseLindblad<f64>,
    ) -> Result<FluxRecord, ThermoError> {
        let dims: BipartiteDims = ops.dims;
        let rate = model.apply(rho)?;
        let d_c = model.dissipator(rho, Some(Reservoir::Cold))?;
        let d_h = model.dissipator(rho, Some(Reservoir::Hot))?;
        let d_all = &d_c + &d_h;
        let tr = |a: &ComplexMatrix<f64>, b: &ComplexMatrix<f64>| heat_flux(a, b);
        let q = HeatFluxes {
            qdot_mc: tr(&d_c, &ops.h_m)?,
            qdot_mh: tr(&d_h, &ops.h_m)?,
            qdot_vc: tr(&d_c, &ops.v_mf)?,
            qdot_vh: tr(&d_h, &ops.v_mf)?,
            qdot_f: tr(&d_all, &ops.h_f)?,
        };
        let e_m = tr(rho, &ops.h_m)?;
        let e_f = tr(rho, &ops.h_f)?;
        let e_mf = tr(rho, &ops.h_total)?;
        let mut rec = FluxRecord {
            time,
            e_mf,
            e_m,
            e_f,
            qdot_m: q.qdot_mc + q.qdot_mh,
            qdot_mc: q.qdot_mc,
            qdot_mh: q.qdot_mh,
            qdot_v: q.qdot_vc + q.qdot_vh,
            qdot_vc: q.qdot_vc,
            qdot_vh: q.qdot_vh,
            p_m: power(rho, &ops.h_m, &ops.v_mf)?,
            p_f: power(rho, &ops.h_f, &ops.v_mf)?,
            edot_mf: tr(&rate, &ops.h_total)?,
            edot_m: tr(&rate, &ops.h_m)?,
            edot_f: tr(&rate, &ops.h_f)?,
            qdot_f: q.qdot_f,
            ..Default::default()
        };
        let e = eigh(rho)?;
        let s_mf = entropy_of_spectrum(&e.values)?;
        let ds_mf_dt = entropy_rate_with(&e.values, &e.vectors, &rate, LOG_FLOOR)?;
        let rho_m = dims.partial_trace(rho, Subsystem::Matter)?;
        let em = eigh(&rho_m)?;
        let s_m = entropy_of_spectrum(&em.values)?;
        let ds_m_dt = entropy_rate_with(&em.values, &em.vectors, &dims.partial_trace(&rate, Subsystem::Matter)?, LOG_FLOOR)?;
        let s_f = von_neumann_entropy(&dims.partial_trace(rho, Subsystem::Field)?)?;
        self.fill_entropies(&mut rec, &q, s_mf, s_m, s_f, ds_mf_dt, ds_m_dt)?;
        Ok(rec)
    }
}

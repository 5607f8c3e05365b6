// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::integrator::Rk4;
use edjcm_core::linalg::{von_neumann_entropy, ComplexMatrix};
use edjcm_core::model::damped_jcm_lindblad;
use edjcm_core::model::state::{fock_state, matter_level};
use serde::Serialize;

use crate::config::JcmSection;
use crate::error::CliError;
use crate::output::{Artifacts, Table};

/// Entropy of a closed-evolution pure state must stay below this.
pub const PURE_ENTROPY_LIMIT: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct RabiCheck {
    pub expected_period: f64,
    pub measured_period: f64,
    pub relative_error: f64,
    pub minima: usize,
    pub max_entropy: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JcmSummary {
    pub samples: usize,
    pub final_excited: f64,
    pub max_trace_error: f64,
    pub rabi: Option<RabiCheck>,
}

/// Times of the interior minima of a sampled series, by parabolic interpolation.
pub fn interpolated_minima(t: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] < y[i - 1] && y[i] <= y[i + 1] {
            let (a, b, c) = (y[i - 1], y[i], y[i + 1]);
            let h = t[i + 1] - t[i];
            let denom = a - 2.0 * b + c;
            let shift = if denom.abs() > 0.0 { 0.5 * h * (a - c) / denom } else { 0.0 };
            out.push(t[i] + shift);
        }
    }
    out
}

pub fn run_jcm(sec: &JcmSection) -> Result<(Artifacts, JcmSummary), CliError> {
    let p = sec.params();
    let model = damped_jcm_lindblad::<f64>(&p)?;
    let dims = p.dims();
    let rho0 = matter_level::<f64>(2, 1)?.kron(&fock_state(p.n_fock, sec.initial_photons)?);
    let dim = dims.total();
    let mut y = rho0.into_vec();
    let mut rk = Rk4::<f64>::new(dim * dim);
    let steps = (sec.t_final / sec.step_h).round() as usize;
    let track_entropy = p.gamma == 0.0;

    let mut table = Table::new(&["time", "p_excited", "trace", "S_af"])?;
    let (mut times, mut pe) = (Vec::new(), Vec::new());
    let (mut max_trace_error, mut max_entropy) = (0.0f64, 0.0f64);
    let mut sample = |step: usize, y: &[num_complex::Complex<f64>], table: &mut Table| -> Result<(), CliError> {
        let rho = ComplexMatrix::from_vec(dim, dim, y.to_vec()).expect("square state");
        let t = step as f64 * sec.step_h;
        let excited: f64 = (0..p.n_fock).map(|n| rho[(dims.index(1, n), dims.index(1, n))].re).sum();
        let tr = rho.trace().re;
        let s = if track_entropy { von_neumann_entropy(&rho.hermitian_part())? } else { f64::NAN };
        max_trace_error = max_trace_error.max((tr - 1.0).abs());
        if track_entropy {
            max_entropy = max_entropy.max(s);
        }
        times.push(t);
        pe.push(excited);
        table.numbers(&[t, excited, tr, s])
    };
    sample(0, &y, &mut table)?;
    for step in 1..=steps {
        rk.step(&model, &mut y, sec.step_h);
        if step % sec.sample_stride == 0 || step == steps {
            sample(step, &y, &mut table)?;
        }
    }

    let rabi = (p.gamma == 0.0 && p.lambda > 0.0).then(|| {
        let expected = std::f64::consts::PI / (p.lambda * ((sec.initial_photons + 1) as f64).sqrt());
        let minima = interpolated_minima(&times, &pe);
        let measured = if minima.len() >= 2 {
            (minima[minima.len() - 1] - minima[0]) / (minima.len() - 1) as f64
        } else {
            f64::NAN
        };
        let relative_error = (measured - expected).abs() / expected;
        RabiCheck {
            expected_period: expected,
            measured_period: measured,
            relative_error,
            minima: minima.len(),
            max_entropy,
            passed: relative_error <= sec.period_tolerance && max_entropy <= PURE_ENTROPY_LIMIT,
        }
    });
    let summary = JcmSummary { samples: times.len(), final_excited: *pe.last().unwrap_or(&f64::NAN), max_trace_error, rabi };
    let mut artifacts = Artifacts::default();
    artifacts.add("jcm.csv", table.finish()?);
    artifacts.add_json("summary.json", &summary);
    Ok((artifacts, summary))
}

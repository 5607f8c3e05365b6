// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::integrator::{
    continue_from, linear_fit, liouvillian_expm_oracle, propagate, ExtendPolicy, IntegrationConfig, Observer, Rk4, Sample,
    SuperoperatorFlow,
};
use edjcm_core::linalg::ComplexMatrix;
use edjcm_core::model::state::{fock_state, matter_level};
use edjcm_core::model::{damped_jcm_lindblad, edjcm_lindblad, recommended_cutoff, JcmParams, ModelParams, OperatorSet, SectorLayout};
use edjcm_core::phase_space::coherent_density;
use edjcm_core::{Complex64, State};

struct Population {
    level: usize,
    series: Vec<(f64, f64)>,
}

impl Observer for Population {
    fn observe(&mut self, s: &Sample<'_>) -> Result<(), String> {
        self.series.push((s.time, s.state.reduced_matter()[(self.level, self.level)].re));
        Ok(())
    }
}

fn lossless() -> ModelParams {
    ModelParams { gamma01: 0.0, gamma02: 0.0, ..ModelParams::reference() }
}

#[test]
fn collapse_and_revival_of_a_strong_coherent_field() {
    // populations only depend on the photon distribution, so order 0 suffices
    let nbar = 100.0f64;
    let n = recommended_cutoff(nbar);
    let p = lossless().with_n_fock(n);
    let rho_f = coherent_density(Complex64::new(nbar.sqrt(), 0.0), n).unwrap();
    let rho0 = State::product(&matter_level(3, 1).unwrap(), &rho_f, SectorLayout::diagonal(n).unwrap()).unwrap();
    let cfg = IntegrationConfig { step_h: 0.01, t_final: 80.0, sample_stride: 5, ..Default::default() };
    let mut obs = Population { level: 1, series: Vec::new() };
    propagate(&p, rho0, &cfg, &mut [&mut obs]).unwrap();

    let collapsed = obs.series.iter().filter(|(t, _)| (20.0..40.0).contains(t)).all(|(_, p1)| (p1 - 0.5).abs() < 0.05);
    assert!(collapsed);
    let (t_peak, amp) = obs
        .series
        .iter()
        .filter(|(t, _)| (45.0..80.0).contains(t))
        .map(|&(t, p1)| (t, (p1 - 0.5).abs()))
        .fold((0.0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let t_revival = 2.0 * std::f64::consts::PI * nbar.sqrt();
    assert!(amp > 0.1, "revival amplitude {amp}");
    assert!((t_peak - t_revival).abs() < 4.0, "peak at {t_peak}, expected near {t_revival}");
}

fn jcm_error(h: f64, t: f64) -> f64 {
    let p = JcmParams { gamma: 0.05, n_th: 0.3, lambda: 1.0, n_fock: 4 };
    let model = damped_jcm_lindblad::<f64>(&p).unwrap();
    let rho0 = matter_level::<f64>(2, 1).unwrap().kron(&fock_state(4, 1).unwrap());
    let exact = liouvillian_expm_oracle(&model, &rho0, t).unwrap();
    let mut y = rho0.into_vec();
    Rk4::new(64).integrate(&SuperoperatorFlow::new(&model), &mut y, h, (t / h).round() as usize);
    (&ComplexMatrix::from_vec(8, 8, y).unwrap() - &exact).max_abs()
}

#[test]
fn rk4_is_fourth_order() {
    let errors: Vec<f64> = [0.2, 0.1, 0.05].iter().map(|&h| jcm_error(h, 10.0)).collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 4.0).abs() < 0.3, "observed order {order} from {errors:?}");
    }
}

#[test]
fn block_engine_agrees_with_the_liouvillian_exponential() {
    let p = ModelParams { gamma01: 0.02, gamma02: 0.03, ..ModelParams::reference() }.with_n_fock(3);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [Complex64::new(s, 0.0), Complex64::new(0.0, -s), Complex64::new(0.0, 0.0)];
    let rho_f = ComplexMatrix::outer(&psi, &psi);
    let rho_m = edjcm_core::model::state::matter_mixture::<f64>(&[0.2, 0.5, 0.3]).unwrap();
    let dense0 = rho_m.kron(&rho_f);
    let model = edjcm_lindblad(&p, &OperatorSet::build(&p));
    let mut state = State::product(&rho_m, &rho_f, SectorLayout::full(3).unwrap()).unwrap();
    let cfg = IntegrationConfig { step_h: 0.005, top_fock_limit: 1.0, sample_stride: usize::MAX, ..Default::default() };
    let mut t = 0.0;
    for (i, target) in [0.5, 5.0, 40.0].into_iter().enumerate() {
        let leg = IntegrationConfig { t_final: target, ..cfg.clone() };
        let traj = if i == 0 { propagate(&p, state, &leg, &mut []) } else { continue_from(&p, state, t, &leg, &mut []) }.unwrap();
        t = traj.final_time;
        state = traj.final_state;
        let exact = liouvillian_expm_oracle(&model, &dense0, t).unwrap();
        assert!((&state.to_dense() - &exact).max_abs() < 1e-9, "t = {t}");
    }
}

#[test]
fn cutoff_grows_when_the_top_level_fills() {
    let p = ModelParams::reference().with_n_fock(4);
    let rho0 = State::product(&matter_level(3, 1).unwrap(), &fock_state(4, 0).unwrap(), SectorLayout::diagonal(4).unwrap()).unwrap();
    let cfg = IntegrationConfig {
        step_h: 0.05,
        t_final: 4000.0,
        sample_stride: 200,
        extend: Some(ExtendPolicy { increment: 4, max_n_fock: 100 }),
        ..Default::default()
    };
    let traj = propagate(&p, rho0, &cfg, &mut []).unwrap();
    assert!(!traj.extensions.is_empty());
    assert!(traj.final_state.n_fock() > 4);
    assert!(traj.extensions.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 < w[1].1));
    assert!(traj.max_trace_error() < 1e-10);
}

#[test]
fn fixed_cutoff_breach_is_an_error() {
    let p = ModelParams::reference().with_n_fock(3);
    let rho0 = State::product(&matter_level(3, 1).unwrap(), &fock_state(3, 0).unwrap(), SectorLayout::diagonal(3).unwrap()).unwrap();
    let cfg = IntegrationConfig { step_h: 0.05, t_final: 4000.0, ..Default::default() };
    assert!(propagate(&p, rho0, &cfg, &mut []).is_err());
}

#[test]
fn sampling_and_chaining_are_seamless() {
    let p = ModelParams::reference().with_n_fock(6);
    let make = || State::product(&matter_level(3, 1).unwrap(), &fock_state(6, 0).unwrap(), SectorLayout::diagonal(6).unwrap()).unwrap();
    let cfg = IntegrationConfig { step_h: 0.05, t_final: 10.0, sample_stride: 10, ..Default::default() };
    let mut whole = Population { level: 2, series: Vec::new() };
    let one = propagate(&p, make(), &cfg, &mut [&mut whole]).unwrap();
    assert_eq!(whole.series.len(), 21);

    let mut parts = Population { level: 2, series: Vec::new() };
    let first = propagate(&p, make(), &IntegrationConfig { t_final: 5.0, ..cfg.clone() }, &mut [&mut parts]).unwrap();
    let second = continue_from(&p, first.final_state, first.final_time, &cfg, &mut [&mut parts]).unwrap();
    assert_eq!(parts.series.len(), whole.series.len());
    for (a, b) in whole.series.iter().zip(&parts.series) {
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-15);
    }
    assert!((&one.final_state.to_dense() - &second.final_state.to_dense()).max_abs() < 1e-15);
}

#[test]
fn linear_fit_recovers_a_line() {
    let x: Vec<f64> = (0..50).map(f64::from).collect();
    let y: Vec<f64> = x.iter().map(|v| 3.0e-5 * v - 0.25).collect();
    let f = linear_fit(&x, &y).unwrap();
    assert!((f.slope - 3.0e-5).abs() < 1e-18);
    assert!((f.intercept + 0.25).abs() < 1e-14);
    assert!((f.r_squared - 1.0).abs() < 1e-12);
}

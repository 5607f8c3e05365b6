// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::integrator::{propagate, ExtendPolicy, IntegrationConfig};
use edjcm_core::linalg::ComplexMatrix;
use edjcm_core::model::state::{matter_level, matter_mixture};
use edjcm_core::model::{BlockGenerator, ModelParams, SectorLayout};
use edjcm_core::thermo::{engine_efficiency, first_law_audit, EntropyMode, FluxRecorder, ThermoContext};
use edjcm_core::State;
use proptest::prelude::*;

fn thermal_field(n: usize, nbar: f64) -> ComplexMatrix<f64> {
    let x = nbar / (1.0 + nbar);
    let w: Vec<f64> = (0..n).map(|k| x.powi(k as i32)).collect();
    let z: f64 = w.iter().sum();
    ComplexMatrix::from_real_diagonal(&w.iter().map(|v| v / z).collect::<Vec<_>>())
}

#[test]
fn no_coupling_means_no_work() {
    let p = ModelParams { lambda: 0.0, ..ModelParams::reference() }.with_n_fock(6);
    let s = State::product(&matter_level(3, 1).unwrap(), &thermal_field(6, 0.5), SectorLayout::full(6).unwrap()).unwrap();
    let r = ThermoContext::new(&p).unwrap().record(0.0, &s, &BlockGenerator::new(&p, s.layout()), EntropyMode::Full).unwrap();
    assert_eq!(r.p_m, 0.0);
    assert_eq!(r.p_f, 0.0);
    assert!(r.sigma >= 0.0);
}

#[test]
fn hot_bath_pumps_an_empty_ground_state() {
    let p = ModelParams::reference().with_n_fock(4);
    let s = State::product(&matter_level(3, 0).unwrap(), &thermal_field(4, 0.0), SectorLayout::diagonal(4).unwrap()).unwrap();
    let r = ThermoContext::new(&p).unwrap().record(0.0, &s, &BlockGenerator::new(&p, s.layout()), EntropyMode::Skip).unwrap();
    // only 0 -> 1 absorption: Q_mH = 2 Gamma01 n01 omega_h
    let expected = 2.0 * p.gamma01 * p.n01 * p.omega_h();
    assert!((r.qdot_mh - expected).abs() < 1e-15);
    assert!(r.qdot_mc > 0.0);
    assert!(r.sigma.is_nan());
}

#[test]
fn efficiency_above_carnot_is_flagged() {
    let e = engine_efficiency(-0.9, 1.0, 0.8).unwrap();
    assert!(e.exceeds_carnot);
    assert!((e.eta - 0.9).abs() < 1e-15);
    assert!(!engine_efficiency(-0.5, 1.0, 0.8).unwrap().exceeds_carnot);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn balances_hold_along_trajectories(
        g1 in 5e-4f64..5e-3, g2 in 5e-4f64..5e-3, n1 in 0.05f64..12.0, n2 in 0.05f64..12.0,
        lambda in 0.05f64..1.0, nbar in 0.0f64..1.5, w in (0.1f64..1.0, 0.1f64..1.0, 0.1f64..1.0),
        full in any::<bool>(),
    ) {
        let n = 8;
        let p = ModelParams { gamma01: g1, gamma02: g2, n01: n1, n02: n2, lambda, ..ModelParams::reference() }.with_n_fock(n);
        let layout = if full { SectorLayout::full(n) } else { SectorLayout::diagonal(n) }.unwrap();
        let rho_m = matter_mixture::<f64>(&[w.0, w.1, w.2]).unwrap();
        let s = State::product(&rho_m, &thermal_field(n, nbar), layout).unwrap();
        let cfg = IntegrationConfig {
            step_h: 0.02, t_final: 40.0, sample_stride: 50,
            extend: Some(ExtendPolicy { increment: 4, max_n_fock: 40 }), ..Default::default()
        };
        let mut rec = FluxRecorder::new(ThermoContext::new(&p).unwrap(), EntropyMode::Full);
        propagate(&p, s, &cfg, &mut [&mut rec]).unwrap();
        let a = rec.audit;
        prop_assert_eq!(a.samples, 41);
        prop_assert!(a.min_sigma >= -1e-9, "sigma {}", a.min_sigma);
        prop_assert!(a.max_first_law <= 1e-12);
        prop_assert!(a.max_power_balance <= 1e-14);
        prop_assert!(a.max_field_heat <= 1e-15);
        prop_assert!(a.max_trace_drift <= 1e-12);
        for r in &rec.records {
            let fl = first_law_audit(r);
            prop_assert!(fl.total <= 1e-12 && fl.split <= 1e-12);
            prop_assert!((r.s_cond_m - (r.s_mf - r.s_f)).abs() < 1e-12);
        }
    }
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use edjcm_core::linalg::ComplexMatrix;
use edjcm_core::semiclassical::printed::{corrected, literature_constants, literature_inversion_ratio};
use edjcm_core::semiclassical::steady::{solve_stationary, Case};
use edjcm_core::semiclassical::{
    closed_form, coherence_landscape, sc_derivative, sc_propagate, sc_steady_state, scovil_inversion_ratio, ScPropagateConfig, ScState,
    SemiclassicalParams,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SemiclassicalParams> {
    (1e-4f64..1e-2, 1e-4f64..1e-2, 0.01f64..20.0, 0.01f64..20.0, 1e-4f64..2.0).prop_map(|(g1, g2, n1, n2, l)| SemiclassicalParams {
        gamma01: g1,
        gamma02: g2,
        n01: n1,
        n02: n2,
        lambda_sc: l,
        ..SemiclassicalParams::reference(1.0)
    })
}

#[test]
fn weak_drive_recovers_the_bare_population_ratio() {
    let p = SemiclassicalParams::reference(1e-7);
    let r = sc_steady_state(&p).unwrap().r;
    assert!((r - scovil_inversion_ratio(p.n01, p.n02)).abs() < 1e-6, "r = {r}");
    // strong drive saturates the transition
    assert!((sc_steady_state(&SemiclassicalParams::reference(50.0)).unwrap().r - 1.0).abs() < 1e-6);
}

#[test]
fn literature_ratios_sit_at_the_printed_digits() {
    for (e0, printed, digits) in [(0.1, 1.01, 2), (1.0, 1.00001, 5), (10.0, 1.00000001, 8)] {
        let r = literature_inversion_ratio(&SemiclassicalParams::reference(e0));
        let scale = 10f64.powi(digits);
        assert_eq!((r * scale).round() / scale, printed, "E0 = {e0}: {r}");
    }
}

#[test]
fn corrected_transcription_sums_to_f() {
    let (g1, g2, n1, n2, l) = (1e-3f64, 1e-3, 10.0, 0.1, 0.3);
    let lit = literature_constants(g1, g2, n1, n2, l);
    assert!(((lit.a + lit.b + lit.c) / lit.f - 1.0).abs() > 1e-6);
    let fixed = corrected(g1, g2, n1, n2, l);
    assert!(((fixed.a + fixed.b + fixed.c) / fixed.f - 1.0).abs() < 1e-12);
}

#[test]
fn drive_at_resonance_conserves_energy() {
    let p = SemiclassicalParams::reference(0.2);
    assert!((p.omega - (p.omega1 - p.omega2)).abs() < 1e-15);
    let f = sc_steady_state(&p).unwrap().fluxes;
    assert!(f.edot.abs() < 1e-15 * f.qdot_h.abs().max(1.0));
}

#[test]
fn landscape_cases() {
    let pts = coherence_landscape(&SemiclassicalParams::reference(0.1), &[0.5, 2.0], &[0.5, 2.0]);
    assert_eq!(pts.len(), 4);
    assert_eq!(pts[0].case, Case::A);
    assert!(pts[0].coherence == 0.0);
    assert_eq!(pts[1].case, Case::B);
    assert_eq!(pts[2].case, Case::C);
    assert!(pts[1].coherence > 0.0 && pts[2].coherence > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_solves_the_stationary_equations(p in params()) {
        let sol = sc_steady_state(&p).unwrap();
        let k = closed_form(p.gamma01, p.gamma02, p.n01, p.n02, p.lambda_sc);
        prop_assert!(((k.a + k.b + k.c) / k.f - 1.0).abs() < 1e-12);
        let x = solve_stationary(&p).unwrap();
        let got = [sol.rho_ss[(0, 0)].re, sol.rho_ss[(1, 1)].re, sol.rho_ss[(2, 2)].re, sol.rho_ss[(1, 2)].im];
        for (a, b) in got.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-6), "{got:?} vs {x:?}");
        }
        prop_assert!(sc_derivative(&sol.rho_ss, &p).max_abs() <= 1e-14 * p.max_rate().max(p.lambda_sc));
        prop_assert!(sol.rho_ss.hermiticity_error() == 0.0);
        // amplification exactly when the hot side is hotter
        prop_assert_eq!(sol.case == Case::C, sol.fluxes.p < 0.0 || p.n01 == p.n02);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn propagation_relaxes_to_the_closed_form(p in params(), w in (0.1f64..1.0, 0.1f64..1.0, 0.1f64..1.0)) {
        let z = w.0 + w.1 + w.2;
        let rho0 = ScState::new(ComplexMatrix::from_real_diagonal(&[w.0 / z, w.1 / z, w.2 / z]), 0.0).unwrap();
        let traj = sc_propagate(&rho0, &p, &ScPropagateConfig::default()).unwrap();
        prop_assert!(traj.converged);
        prop_assert!((&traj.final_state.rho - &sc_steady_state(&p).unwrap().rho_ss).max_abs() < 1e-8);
    }
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria C1 to C10, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail; the target fails if
//! any other criterion fails, or if a known-red one starts passing.

use std::collections::BTreeMap;
use std::error::Error;
use std::process::ExitCode;
use std::time::Instant;

use edjcm_cli::config::JcmSection;
use edjcm_cli::runs::jcm::run_jcm;
use edjcm_cli::runs::reproduce::reference_baselines;
use edjcm_core::entanglement::{conditional_entropies, partial_transpose_spectrum, peres_test, EntanglementRecorder, PT_THRESHOLD};
use edjcm_core::integrator::{
    continue_from, liouvillian_expm_oracle, propagate, steady_state_power_fit, ExtendPolicy, IntegrationConfig, Observer, Rk4,
    SuperoperatorFlow,
};
use edjcm_core::linalg::{eigvalsh, ComplexMatrix};
use edjcm_core::model::state::{fock_state, matter_level};
use edjcm_core::model::{damped_jcm_lindblad, edjcm_lindblad, recommended_cutoff, JcmParams, ModelParams, SectorLayout};
use edjcm_core::phase_space::{coherent_density, offdiagonal_norm, ring_symmetry};
use edjcm_core::semiclassical::printed::literature_inversion_ratio;
use edjcm_core::semiclassical::{
    sc_propagate, sc_steady_state, scovil_inversion_ratio, steady_residual, ScPropagateConfig, ScState, SemiclassicalParams,
};
use edjcm_core::thermo::{
    engine_efficiency, run_to_matter_steady_state, AuditSummary, EntropyMode, FluxRecord, FluxRecorder, SteadyCriteria,
    ThermoContext,
};
use edjcm_core::{Complex64, Operators, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Res<T> = Result<T, Box<dyn Error>>;

const KNOWN_RED: &[&str] = &["C10"];

// C1
const FIELD_POWER: f64 = 4.5975e-5;
const FIELD_POWER_REL: f64 = 0.02;
const MIN_R_SQUARED: f64 = 0.9999;
const VACUUM_T_GAMMA: f64 = 300.0;
// C2
const ETA: f64 = 0.750;
const ETA_TOL: f64 = 0.005;
const CARNOT: f64 = 0.990;
const CARNOT_TOL: f64 = 0.001;
// C3
const ETA_IDENTITY_REL: f64 = 1e-3;
// C4
const SWEEP_POINTS: usize = 100;
const SWEEP_SEED: u64 = 20261014;
const SC_ENTRY_TOL: f64 = 1e-8;
const SC_SUM_REL: f64 = 1e-12;
const SC_RESIDUAL_REL: f64 = 1e-12;
// C6
const COMPARE_ALPHAS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
const COMPARE_REL: f64 = 5e-3;
const STEADY_T_GAMMA: f64 = 300.0;
// C7
const SIGMA_FLOOR: f64 = -1e-9;
const FIRST_LAW_TOL: f64 = 1e-9;
const POWER_BALANCE_TOL: f64 = 1e-10;
const FIELD_HEAT_TOL: f64 = 1e-12;
const TRACE_DRIFT_TOL: f64 = 1e-8;
// C8
const ORACLE_TOL: f64 = 1e-7;
const ORACLE_TIMES_GAMMA: [f64; 3] = [0.1, 1.0, 10.0];
const JCM_ENTROPY_TOL: f64 = 1e-9;
const RABI_REL: f64 = 1e-3;
// C9
const ENT_ALPHA_SQ: f64 = 5.0;
const ENT_STEP: f64 = 0.01;
const LATE_PT_FLOOR: f64 = -1e-6;
// C10
const RING_REL: f64 = 0.01;
const COHERENCE_RATIO: f64 = 1e-12;
const COHERENCE_T_GAMMA: f64 = 10.0;
const Q_T_GAMMA: f64 = 253.0;

struct Verdict {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

/// Runs shared between criteria.
#[derive(Default)]
struct Shared {
    audits: Vec<(String, AuditSummary)>,
    vacuum_last: Option<FluxRecord>,
    steady: BTreeMap<u64, SteadyPoint>,
}

#[derive(Clone, Copy)]
struct SteadyPoint {
    record: FluxRecord,
    reached: bool,
    n_fock: usize,
}

fn reference() -> ModelParams {
    ModelParams::reference()
}

/// Order-0 runs: h = 0.05, one sample per time unit, cutoff grows on demand.
fn order0_config(t_final: f64) -> IntegrationConfig {
    let step_h = 0.05;
    IntegrationConfig {
        step_h,
        t_final,
        sample_stride: (1.0 / step_h).round() as usize,
        extend: Some(ExtendPolicy { increment: 10, max_n_fock: 800 }),
        ..Default::default()
    }
}

fn recorder(p: &ModelParams) -> Res<FluxRecorder> {
    Ok(FluxRecorder::new(ThermoContext::new(p)?, EntropyMode::Full))
}

fn c1(shared: &mut Shared) -> Res<Verdict> {
    let p = reference().with_n_fock(30);
    let t_final = VACUUM_T_GAMMA / p.gamma_eff();
    let rho0 = State::product(&matter_level(3, 1)?, &fock_state(p.n_fock, 0)?, SectorLayout::diagonal(p.n_fock)?)?;
    let mut rec = recorder(&p)?;
    let traj = propagate(&p, rho0, &order0_config(t_final), &mut [&mut rec])?;
    let times: Vec<f64> = rec.records.iter().map(|r| r.time).collect();
    let ef: Vec<f64> = rec.records.iter().map(|r| r.e_f).collect();
    let fit = steady_state_power_fit(&times, &ef, 10_000)?.fit;
    let rel = (fit.slope / FIELD_POWER - 1.0).abs();
    shared.audits.push(("vacuum".into(), rec.audit));
    shared.vacuum_last = rec.records.last().copied();
    Ok(Verdict {
        id: "C1",
        title: "steady-state field power",
        pass: rel <= FIELD_POWER_REL && fit.r_squared >= MIN_R_SQUARED && traj.final_time >= t_final - 1e-9,
        detail: format!(
            "slope {:.7e} (rel dev {rel:.2e}), R^2 {:.8}, t = {:.1}/Gamma_eff, N {} -> {}",
            fit.slope,
            fit.r_squared,
            traj.final_time * p.gamma_eff(),
            p.n_fock,
            traj.final_state.n_fock()
        ),
    })
}

fn c2(shared: &Shared) -> Res<Verdict> {
    let p = reference();
    let r = shared.vacuum_last.ok_or("C1 run missing")?;
    let carnot = p.carnot_bound()?;
    let eff = engine_efficiency(r.p_m, r.qdot_mh, carnot)?;
    Ok(Verdict {
        id: "C2",
        title: "engine efficiency and Carnot bound",
        pass: (eff.eta - ETA).abs() <= ETA_TOL && (carnot - CARNOT).abs() <= CARNOT_TOL && !eff.exceeds_carnot,
        detail: format!("eta {:.10}, Carnot {carnot:.6}, omega_s/omega_p {:.6}", eff.eta, p.scovil_efficiency()),
    })
}

/// Order-0 run from matter |1> and a coherent field, stopped at matter steady state.
fn steady_point(shared: &mut Shared, alpha: f64) -> Res<SteadyPoint> {
    if let Some(s) = shared.steady.get(&alpha.to_bits()) {
        return Ok(*s);
    }
    let base = reference();
    let n = recommended_cutoff(alpha * alpha);
    let p = base.with_n_fock(n);
    let rho_f = coherent_density(Complex64::new(alpha, 0.0), n)?;
    let rho0 = State::product(&matter_level(3, 1)?, &rho_f, SectorLayout::diagonal(n)?)?;
    let t_max = STEADY_T_GAMMA / p.gamma_eff();
    let mut rec = recorder(&p)?;
    let run = run_to_matter_steady_state(&p, rho0, &order0_config(t_max), SteadyCriteria::default(), 0.0, t_max, &mut [&mut rec])?;
    let point = SteadyPoint {
        record: *rec.records.last().ok_or("no samples")?,
        reached: run.reached,
        n_fock: run.trajectory.final_state.n_fock(),
    };
    shared.audits.push((format!("coherent alpha = {alpha}"), rec.audit));
    shared.steady.insert(alpha.to_bits(), point);
    Ok(point)
}

fn c3(shared: &mut Shared) -> Res<Verdict> {
    let target = reference().scovil_efficiency();
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for nbar in [0.0f64, 5.0, 25.0, 100.0] {
        let r = if nbar == 0.0 { shared.vacuum_last.ok_or("C1 run missing")? } else { steady_point(shared, nbar.sqrt())?.record };
        let eta = -r.p_m / r.qdot_mh;
        let rel = (eta / target - 1.0).abs();
        worst = worst.max(rel);
        parts.push(format!("|a|^2={nbar}: {eta:.8}"));
    }
    Ok(Verdict {
        id: "C3",
        title: "efficiency equals omega_s/omega_p",
        pass: worst <= ETA_IDENTITY_REL,
        detail: format!("{} (worst rel dev {worst:.2e})", parts.join(", ")),
    })
}

fn c4() -> Res<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let base = SemiclassicalParams::reference(1.0);
    let (mut entry, mut sum, mut residual) = (0.0f64, 0.0f64, 0.0f64);
    let mut unconverged = 0;
    let rho_start = ComplexMatrix::from_real_diagonal(&[1.0 / 3.0; 3]);
    for _ in 0..SWEEP_POINTS {
        let log_uniform = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| (rng.random_range(lo.ln()..hi.ln())).exp();
        let p = SemiclassicalParams {
            gamma01: log_uniform(&mut rng, 5e-4, 5e-3),
            gamma02: log_uniform(&mut rng, 5e-4, 5e-3),
            n01: log_uniform(&mut rng, 0.05, 20.0),
            n02: log_uniform(&mut rng, 0.05, 20.0),
            lambda_sc: log_uniform(&mut rng, 1e-3, 0.5),
            ..base
        };
        let sol = sc_steady_state(&p)?;
        let k = &sol.constants;
        sum = sum.max(((k.a + k.b + k.c) / k.f - 1.0).abs());
        let (res, scale) = steady_residual(&sol, &p);
        residual = residual.max(res / scale);
        let traj = sc_propagate(&ScState::new(rho_start.clone(), 0.0)?, &p, &ScPropagateConfig::default())?;
        if !traj.converged {
            unconverged += 1;
        }
        entry = entry.max((&traj.final_state.rho - &sol.rho_ss).max_abs());
    }
    Ok(Verdict {
        id: "C4",
        title: "semiclassical closed form vs propagation",
        pass: entry <= SC_ENTRY_TOL && sum <= SC_SUM_REL && residual <= SC_RESIDUAL_REL && unconverged == 0,
        detail: format!(
            "{SWEEP_POINTS} points: max entry dev {entry:.2e}, max |(A+B+C)/F-1| {sum:.2e}, max residual/scale {residual:.2e}, unconverged {unconverged}"
        ),
    })
}

fn c5() -> Res<Verdict> {
    let model = reference();
    let baselines = reference_baselines();
    let mut pass = true;
    let mut parts = Vec::new();
    for (e0, label) in [(0.1, "0.1"), (1.0, "1"), (10.0, "10")] {
        let r = literature_inversion_ratio(&SemiclassicalParams::from_quantum(&model, e0));
        let b = baselines.iter().find(|b| b.quantity == format!("r_literature_e0_{label}")).ok_or("baseline missing")?;
        pass &= b.accepts(r);
        parts.push(format!("E0={label}: r={r:.10}"));
    }
    let scovil = scovil_inversion_ratio(model.n01, model.n02);
    pass &= (scovil - 10.0).abs() <= 1e-12;
    Ok(Verdict {
        id: "C5",
        title: "inversion ratio vs Scovil expression",
        pass,
        detail: format!("{}, Scovil expression {scovil:.15}", parts.join(", ")),
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn c6(shared: &mut Shared) -> Res<Verdict> {
    let model = reference();
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for alpha in COMPARE_ALPHAS {
        let q = steady_point(shared, alpha)?;
        let sc = sc_steady_state(&SemiclassicalParams::from_quantum(&model, alpha))?.fluxes;
        let r = q.record;
        let dev = rel(r.p_m, sc.p).max(rel(r.qdot_h(), sc.qdot_h)).max(rel(r.qdot_c(), sc.qdot_c));
        worst = worst.max(dev);
        let flag = if q.reached { "" } else { " (steady detector not met)" };
        parts.push(format!("|a|={alpha}: {dev:.2e} N={}{flag}", q.n_fock));
    }
    Ok(Verdict {
        id: "C6",
        title: "quantum vs semiclassical steady fluxes",
        pass: worst <= COMPARE_REL,
        detail: format!("max rel dev of P, Q_H, Q_C: {}", parts.join("; ")),
    })
}

fn c7(shared: &Shared) -> Verdict {
    let mut all = AuditSummary::default();
    for (_, a) in &shared.audits {
        all.merge(a);
    }
    let pass = all.min_sigma >= SIGMA_FLOOR
        && all.max_first_law <= FIRST_LAW_TOL
        && all.max_power_balance <= POWER_BALANCE_TOL
        && all.max_field_heat <= FIELD_HEAT_TOL
        && all.max_trace_drift <= TRACE_DRIFT_TOL
        && all.samples > 0;
    Verdict {
        id: "C7",
        title: "second-law and balance audit",
        pass,
        detail: format!(
            "{} samples over {} runs: min sigma {:.2e}, first law {:.2e}, P_m+P_f {:.2e}, Q_f {:.2e}, trace drift {:.2e}",
            all.samples,
            shared.audits.len(),
            all.min_sigma,
            all.max_first_law,
            all.max_power_balance,
            all.max_field_heat,
            all.max_trace_drift
        ),
    }
}

fn c8() -> Res<Verdict> {
    let ge = reference().gamma_eff();
    let times: Vec<f64> = ORACLE_TIMES_GAMMA.iter().map(|t| t / ge).collect();

    // 2 x 3: damped JCM, dense RK4 on the supermatrix.
    let jp = JcmParams { gamma: 0.002, n_th: 0.5, lambda: 0.5, n_fock: 3 };
    let jcm = damped_jcm_lindblad::<f64>(&jp)?;
    let rho0 = matter_level::<f64>(2, 1)?.kron(&fock_state(3, 0)?);
    let flow = SuperoperatorFlow::new(&jcm);
    let mut rk = Rk4::new(36);
    let mut y = rho0.as_slice().to_vec();
    let h = 0.01;
    let (mut t, mut dev_jcm) = (0.0, 0.0f64);
    for &target in &times {
        let steps = ((target - t) / h).round() as usize;
        rk.integrate(&flow, &mut y, h, steps);
        t += steps as f64 * h;
        let exact = liouvillian_expm_oracle(&jcm, &rho0, t)?;
        dev_jcm = dev_jcm.max((&ComplexMatrix::from_vec(6, 6, y.clone())? - &exact).max_abs());
    }

    // 3 x 4: block engine against the dense Liouvillian.
    let p = reference().with_n_fock(4);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [Complex64::new(s, 0.0), Complex64::new(0.0, s), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    let rho_f = ComplexMatrix::outer(&psi, &psi);
    let dense0 = matter_level::<f64>(3, 1)?.kron(&rho_f);
    let dense = edjcm_lindblad(&p, &Operators::build(&p));
    let mut state = State::product(&matter_level(3, 1)?, &rho_f, SectorLayout::full(4)?)?;
    let cfg = IntegrationConfig { step_h: 0.0025, top_fock_limit: 1.0, sample_stride: usize::MAX, ..Default::default() };
    let (mut t, mut dev_ed) = (0.0, 0.0f64);
    for (i, &target) in times.iter().enumerate() {
        let leg = IntegrationConfig { t_final: target, ..cfg.clone() };
        let traj = if i == 0 { propagate(&p, state, &leg, &mut [])? } else { continue_from(&p, state, t, &leg, &mut [])? };
        t = traj.final_time;
        state = traj.final_state;
        let exact = liouvillian_expm_oracle(&dense, &dense0, t)?;
        dev_ed = dev_ed.max((&state.to_dense() - &exact).max_abs());
    }

    let (_, js) = run_jcm(&JcmSection::default())?;
    let rabi = js.rabi.ok_or("no Rabi check")?;
    let pass = dev_jcm <= ORACLE_TOL && dev_ed <= ORACLE_TOL && rabi.max_entropy <= JCM_ENTROPY_TOL && rabi.relative_error <= RABI_REL;
    Ok(Verdict {
        id: "C8",
        title: "RK4 vs Liouvillian exponential; lossless JCM",
        pass,
        detail: format!(
            "max entry dev 2x3 {dev_jcm:.2e}, 3x4 {dev_ed:.2e}; JCM max S_af {:.2e}, period {:.8} vs {:.8} (rel {:.2e})",
            rabi.max_entropy, rabi.measured_period, rabi.expected_period, rabi.relative_error
        ),
    })
}

fn trace_norm(m: &ComplexMatrix<f64>) -> Res<f64> {
    Ok(eigvalsh(&m.hermitian_part())?.iter().map(|v| v.abs()).sum())
}

struct CoherentRun {
    params: ModelParams,
    rho_f0: ComplexMatrix<f64>,
    late: State,
    t_late: f64,
}

/// C9 and the full-coherence leg of C10 share one trajectory.
fn c9(shared: &mut Shared) -> Res<(Verdict, CoherentRun)> {
    let alpha = ENT_ALPHA_SQ.sqrt();
    let n = recommended_cutoff(ENT_ALPHA_SQ);
    let p = reference().with_n_fock(n);
    let ge = p.gamma_eff();
    let start = |n: usize| -> Res<State> {
        Ok(State::product(&matter_level(3, 1)?, &coherent_density(Complex64::new(alpha, 0.0), n)?, SectorLayout::full(n)?)?)
    };
    let rho0 = start(n)?;
    let rho_f0 = rho0.reduced_field();
    let base = IntegrationConfig {
        step_h: ENT_STEP,
        extend: Some(ExtendPolicy { increment: 10, max_n_fock: 200 }),
        ..Default::default()
    };

    // Early leg, witnesses every 0.5 time units.
    let t1 = 0.2 / ge;
    let mut flux = recorder(&p)?;
    let mut ent = EntanglementRecorder::new(1);
    let leg = IntegrationConfig { t_final: t1, sample_stride: 50, ..base.clone() };
    let traj = propagate(&p, rho0, &leg, &mut [&mut flux as &mut dyn Observer, &mut ent])?;
    let early_min = ent.records.iter().map(|(_, ce, _)| ce.s_cond_m).fold(f64::INFINITY, f64::min);

    let coarse = IntegrationConfig { sample_stride: 500, ..base.clone() };
    let t2 = 0.5 / ge;
    let traj = continue_from(&p, traj.final_state, traj.final_time, &IntegrationConfig { t_final: t2, ..coarse.clone() }, &mut [&mut flux])?;
    let mid = traj.final_state.to_dense();
    let n_mid = traj.final_state.n_fock();
    let wider = propagate(&p.with_n_fock(n + 10), start(n + 10)?, &IntegrationConfig { t_final: t2, sample_stride: usize::MAX, ..base.clone() }, &mut [])?;
    let peres = peres_test(traj.final_time, &[(n_mid, &mid), (wider.final_state.n_fock(), &wider.final_state.to_dense())], PT_THRESHOLD)?;

    let t3 = 2.0 / ge;
    let traj = continue_from(&p, traj.final_state, traj.final_time, &IntegrationConfig { t_final: t3, ..coarse.clone() }, &mut [&mut flux])?;
    let dims = traj.final_state.layout().dims();
    let late_rho = traj.final_state.to_dense();
    let ce = conditional_entropies(&late_rho, dims)?;
    let pt = partial_transpose_spectrum(&late_rho, dims)?;

    let t4 = COHERENCE_T_GAMMA / ge;
    let traj = continue_from(&p, traj.final_state, traj.final_time, &IntegrationConfig { t_final: t4, ..coarse }, &mut [&mut flux])?;
    shared.audits.push(("coherent |a|^2 = 5, full coherences".into(), flux.audit));

    let pass = early_min < 0.0
        && peres.min_pt_eigenvalue < -PT_THRESHOLD
        && peres.truncation_verified
        && pt.min_eigenvalue >= LATE_PT_FLOOR
        && ce.s_cond_m > 0.0
        && ce.s_cond_f > 0.0;
    let verdict = Verdict {
        id: "C9",
        title: "entanglement timeline",
        pass,
        detail: format!(
            "min S(m|f) for t <= 0.2/Gamma_eff {early_min:.4}; PT min at 0.5/Gamma_eff {:.3e} over N {:?} (persistent: {}); at 2/Gamma_eff PT min {:.2e}, S(m|f) {:.4}, S(f|m) {:.4}",
            peres.min_pt_eigenvalue,
            peres.per_truncation.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            peres.truncation_verified,
            pt.min_eigenvalue,
            ce.s_cond_m,
            ce.s_cond_f
        ),
    };
    Ok((verdict, CoherentRun { params: p, rho_f0, late: traj.final_state, t_late: traj.final_time }))
}

fn c10(shared: &mut Shared, run: CoherentRun) -> Res<Verdict> {
    let p = &run.params;
    let ge = p.gamma_eff();
    let ratio = offdiagonal_norm(&run.late.reduced_field()) / offdiagonal_norm(&run.rho_f0);

    // From here on only order 0 is carried. The dropped part moves Q by at most
    // ||rho - rho_0||_1 / pi, and the dynamics cannot increase that trace norm.
    let diag = run.late.restrict(&[0])?;
    let bound = trace_norm(&(&run.late.to_dense() - &diag.to_dense()))? / std::f64::consts::PI;
    let p0 = p.with_n_fock(diag.n_fock());
    let t_q = Q_T_GAMMA / ge;
    let mut flux = recorder(&p0)?;
    let cfg = IntegrationConfig { t_final: t_q, sample_stride: 100, ..order0_config(t_q) };
    let traj = continue_from(&p0, diag, run.t_late, &cfg, &mut [&mut flux])?;
    shared.audits.push(("order-0 continuation".into(), flux.audit));

    let rho_f = traj.final_state.reduced_field();
    let reach = traj.final_state.mean_photon_number().sqrt() + 4.0;
    let radii: Vec<f64> = (1..=40).map(|i| reach * i as f64 / 40.0).collect();
    let rings = ring_symmetry(&rho_f, &radii, 72, 1e-3)?;
    let top = rings.means.iter().fold(0.0f64, |m, &v| m.max(v));
    let ring_worst = rings
        .means
        .iter()
        .zip(&rings.deviations)
        .filter(|(&m, _)| m >= 1e-3 * top)
        .map(|(&m, &d)| d + 2.0 * bound / m)
        .fold(0.0f64, f64::max);
    let ring_ok = ring_worst <= RING_REL;
    let coherence_ok = ratio <= COHERENCE_RATIO;
    Ok(Verdict {
        id: "C10",
        title: "Q-function ring symmetry and field decoherence",
        pass: ring_ok && coherence_ok,
        detail: format!(
            "coherence ratio at {COHERENCE_T_GAMMA}/Gamma_eff {ratio:.3e} (limit {COHERENCE_RATIO:.0e}, {}); rings at {:.1}/Gamma_eff: worst variation incl. bound {ring_worst:.2e} ({}), dropped-order Q bound {bound:.2e}",
            if coherence_ok { "ok" } else { "not met" },
            traj.final_time * ge,
            if ring_ok { "ok" } else { "not met" }
        ),
    })
}

fn run_all() -> Vec<(Verdict, f64)> {
    let mut shared = Shared::default();
    let mut out = Vec::new();
    let mut timed = |f: &mut dyn FnMut(&mut Shared) -> Res<Verdict>, id: &'static str, shared: &mut Shared| {
        let t0 = Instant::now();
        let v = f(shared).unwrap_or_else(|e| Verdict { id, title: "error", pass: false, detail: e.to_string() });
        out.push((v, t0.elapsed().as_secs_f64()));
    };
    timed(&mut c1, "C1", &mut shared);
    timed(&mut |s| c2(s), "C2", &mut shared);
    timed(&mut c3, "C3", &mut shared);
    timed(&mut |_| c4(), "C4", &mut shared);
    timed(&mut |_| c5(), "C5", &mut shared);
    timed(&mut c6, "C6", &mut shared);
    timed(&mut |_| c8(), "C8", &mut shared);
    let mut coherent = None;
    timed(
        &mut |s| {
            let (v, run) = c9(s)?;
            coherent = Some(run);
            Ok(v)
        },
        "C9",
        &mut shared,
    );
    timed(&mut |s| c10(s, coherent.take().ok_or("C9 run failed")?), "C10", &mut shared);
    timed(&mut |s| Ok(c7(s)), "C7", &mut shared);
    out.sort_by_key(|(v, _)| v.id[1..].parse::<u32>().unwrap_or(0));
    out
}

fn main() -> ExitCode {
    let verdicts = run_all();
    let mut ok = true;
    for (v, secs) in &verdicts {
        let known = KNOWN_RED.contains(&v.id);
        let tag = match (v.pass, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (unexpected)",
        };
        println!("{tag:<17} {:<4} {}: {} [{secs:.1} s]", v.id, v.title, v.detail);
        ok &= v.pass != known;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome; a known-red criterion passing means KNOWN_RED is stale");
        ExitCode::FAILURE
    }
}

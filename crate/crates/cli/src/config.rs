// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration. A TOML file is the artifact; `--override key=value`
//! edits it after parsing.

use std::path::PathBuf;

use edjcm_core::integrator::{ExtendPolicy, IntegrationConfig};
use edjcm_core::model::state::{fock_state, matter_level, matter_mixture};
use edjcm_core::model::{recommended_cutoff, BlockState, JcmParams, ModelParams, SectorLayout};
use edjcm_core::phase_space::coherent_density;
use edjcm_core::semiclassical::SemiclassicalParams;
use edjcm_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Quantum,
    Semiclassical,
    ValidateJcm,
    Compare,
    Reproduce,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default)]
    pub model: ModelParams,
    #[serde(default)]
    pub integration: Integration,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub observers: Observers,
    #[serde(default)]
    pub output: Output,
    #[serde(default)]
    pub semiclassical: ScSection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub jcm: JcmSection,
    #[serde(default)]
    pub sweep: Vec<SweepAxis>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnit {
    Absolute,
    /// Multiples of 1/Gamma_eff.
    GammaEff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutChoice {
    /// Order 0 only, unless entanglement or Q-function output needs the coherences.
    Auto,
    Diagonal,
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Integration {
    /// 0 selects the model's default step.
    pub step_h: f64,
    pub time_unit: TimeUnit,
    pub t_final: f64,
    pub sample_stride: usize,
    pub renormalize: bool,
    pub trace_limit: f64,
    pub top_fock_limit: f64,
    /// Cutoff growth on truncation pressure; 0 disables.
    pub extend_increment: usize,
    pub extend_max: usize,
    pub positivity_stride: usize,
    pub layout: LayoutChoice,
    /// Trailing samples used for the E_f fit.
    pub fit_window: usize,
    /// Stop at the matter steady state instead of `t_final`, which then acts as the upper limit.
    pub until_steady: bool,
    pub steady_t_min: f64,
}

impl Default for Integration {
    fn default() -> Self {
        Self {
            step_h: 0.05,
            time_unit: TimeUnit::GammaEff,
            t_final: 1.0,
            sample_stride: 20,
            renormalize: false,
            trace_limit: 1e-6,
            top_fock_limit: 1e-8,
            extend_increment: 10,
            extend_max: 400,
            positivity_stride: 0,
            layout: LayoutChoice::Auto,
            fit_window: 10000,
            until_steady: false,
            steady_t_min: 0.0,
        }
    }
}

impl Integration {
    pub fn to_seconds(&self, t: f64, p: &ModelParams) -> f64 {
        match self.time_unit {
            TimeUnit::Absolute => t,
            TimeUnit::GammaEff => t / p.gamma_eff(),
        }
    }

    pub fn core_config(&self, p: &ModelParams) -> IntegrationConfig {
        IntegrationConfig {
            step_h: if self.step_h > 0.0 { self.step_h } else { p.default_step() },
            t_final: self.to_seconds(self.t_final, p),
            sample_stride: self.sample_stride,
            renormalize: self.renormalize,
            trace_limit: self.trace_limit,
            top_fock_limit: self.top_fock_limit,
            extend: (self.extend_increment > 0)
                .then_some(ExtendPolicy { increment: self.extend_increment, max_n_fock: self.extend_max }),
            positivity_stride: self.positivity_stride,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatterSpec {
    Level(usize),
    /// Populations of |0>, |1>, |2>; normalized on use.
    Mixture(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Fock(usize),
    Coherent { re: f64, im: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSpec {
    pub matter: MatterSpec,
    pub field: FieldSpec,
    /// Use `model.n_fock` as given instead of raising it to fit the initial field.
    pub fixed_cutoff: bool,
}

impl Default for InitialSpec {
    fn default() -> Self {
        Self { matter: MatterSpec::Level(1), field: FieldSpec::Fock(0), fixed_cutoff: false }
    }
}

impl InitialSpec {
    pub fn alpha(&self) -> Complex64 {
        match self.field {
            FieldSpec::Coherent { re, im } => Complex64::new(re, im),
            FieldSpec::Fock(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Cutoff that holds the initial field.
    pub fn cutoff(&self, requested: usize) -> usize {
        if self.fixed_cutoff {
            return requested;
        }
        let need = match self.field {
            FieldSpec::Fock(n) => n + 2,
            FieldSpec::Coherent { .. } => recommended_cutoff(self.alpha().norm_sqr()),
        };
        requested.max(need)
    }

    pub fn matter_density(&self) -> Result<edjcm_core::Matrix, CliError> {
        let rho = match &self.matter {
            MatterSpec::Level(l) => matter_level(3, *l),
            MatterSpec::Mixture(w) => {
                let total: f64 = w.iter().sum();
                if w.len() != 3 || w.iter().any(|x| !(*x >= 0.0)) || !(total > 0.0) {
                    return Err(CliError::validation(format!(
                        "initial.matter.mixture must be three non-negative weights with a positive sum, got {w:?}"
                    )));
                }
                matter_mixture(&w.iter().map(|x| x / total).collect::<Vec<_>>())
            }
        };
        rho.map_err(|e| CliError::validation(format!("initial.matter: {e}")))
    }

    pub fn field_density(&self, n_fock: usize) -> Result<edjcm_core::Matrix, CliError> {
        match self.field {
            FieldSpec::Fock(n) => fock_state(n_fock, n).map_err(|e| CliError::validation(format!("initial.field: {e}"))),
            FieldSpec::Coherent { .. } => {
                coherent_density(self.alpha(), n_fock).map_err(|e| CliError::validation(format!("initial.field: {e}")))
            }
        }
    }

    pub fn block_state(&self, n_fock: usize, layout: SectorLayout) -> Result<BlockState<f64>, CliError> {
        BlockState::product(&self.matter_density()?, &self.field_density(n_fock)?, layout)
            .map_err(|e| CliError::validation(format!("initial: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Observers {
    pub thermo: bool,
    /// Von Neumann entropies and sigma in the flux table.
    pub entropy: bool,
    pub entanglement: bool,
    /// Every k-th sample.
    pub entanglement_stride: usize,
    /// Snapshot times, in `integration.time_unit`.
    pub qfunction_times: Vec<f64>,
    pub qfunction_points: usize,
    /// 0 selects |alpha| + 4.
    pub qfunction_half_width: f64,
    pub enforce_second_law: bool,
}

impl Default for Observers {
    fn default() -> Self {
        Self {
            thermo: true,
            entropy: false,
            entanglement: false,
            entanglement_stride: 1,
            qfunction_times: Vec::new(),
            qfunction_points: 101,
            qfunction_half_width: 0.0,
            enforce_second_law: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Output {
    pub dir: PathBuf,
}

impl Default for Output {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

/// Either `lambda_sc` or a field amplitude `alpha` with lambda_sc = model.lambda * alpha.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScSection {
    pub lambda_sc: Option<f64>,
    pub alpha: Option<f64>,
    /// Also integrate the equations of motion and compare with the closed form.
    pub propagate: bool,
}

impl ScSection {
    pub fn params(&self, model: &ModelParams) -> Result<SemiclassicalParams, CliError> {
        let p = match (self.lambda_sc, self.alpha) {
            (Some(_), Some(_)) => return Err(CliError::validation("semiclassical: give lambda_sc or alpha, not both".into())),
            (Some(l), None) => SemiclassicalParams { lambda_sc: l, ..SemiclassicalParams::from_quantum(model, 0.0) },
            (None, Some(a)) => SemiclassicalParams::from_quantum(model, a),
            (None, None) => return Err(CliError::validation("semiclassical: lambda_sc or alpha is required".into())),
        };
        p.validate().map_err(|e| CliError::validation(format!("semiclassical: {e}")))?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareSection {
    pub alphas: Vec<f64>,
    /// Upper limit of each quantum run, in 1/Gamma_eff.
    pub t_max: f64,
    /// Relative deviation above which a row fails.
    pub tolerance: f64,
}

impl Default for CompareSection {
    fn default() -> Self {
        Self { alphas: vec![0.5, 1.0, 2.0], t_max: 300.0, tolerance: 5e-3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JcmSection {
    pub gamma: f64,
    pub n_th: f64,
    pub lambda: f64,
    pub n_fock: usize,
    pub step_h: f64,
    /// Absolute time.
    pub t_final: f64,
    pub sample_stride: usize,
    pub initial_photons: usize,
    /// Relative tolerance of the vacuum Rabi period check.
    pub period_tolerance: f64,
}

impl Default for JcmSection {
    fn default() -> Self {
        Self {
            gamma: 0.0,
            n_th: 0.0,
            lambda: 1.0,
            n_fock: 3,
            step_h: 1e-3,
            t_final: 20.0,
            sample_stride: 1,
            initial_photons: 0,
            period_tolerance: 1e-3,
        }
    }
}

impl JcmSection {
    pub fn params(&self) -> JcmParams {
        JcmParams { gamma: self.gamma, n_th: self.n_th, lambda: self.lambda, n_fock: self.n_fock }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// Dotted key, e.g. `model.lambda`.
    pub parameter: String,
    pub values: Vec<toml::Value>,
}

/// A parsed configuration together with the document it came from.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub table: toml::Table,
}

impl LoadedConfig {
    pub fn parse(text: &str, origin: &str, overrides: &[String]) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::validation(format!("{origin}: {e}")))?;
        let mut table: toml::Table = toml::from_str(text).map_err(|e| CliError::validation(format!("{origin}: {e}")))?;
        if overrides.is_empty() {
            let loaded = Self { config, table };
            loaded.validate(Some((text, origin)))?;
            return Ok(loaded);
        }
        for ov in overrides {
            let (key, value) = ov
                .split_once('=')
                .ok_or_else(|| CliError::validation(format!("--override {ov}: expected key=value")))?;
            set_path(&mut table, key.trim(), parse_value(value.trim()))
                .map_err(|e| CliError::validation(format!("--override {ov}: {e}")))?;
        }
        Self::from_table(table, "after overrides")
    }

    pub fn from_table(table: toml::Table, origin: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            toml::Value::Table(table.clone()).try_into().map_err(|e| CliError::validation(format!("{origin}: {e}")))?;
        let loaded = Self { config, table };
        loaded.validate(None)?;
        Ok(loaded)
    }

    /// Canonical text of the resolved configuration.
    pub fn echo(&self) -> String {
        toml::to_string(&self.config).expect("configuration serializes")
    }

    fn validate(&self, source: Option<(&str, &str)>) -> Result<(), CliError> {
        let anchor = |section: &str, key: &str, msg: String| match source.and_then(|(t, o)| locate(t, section, key).map(|l| (o, l))) {
            Some((origin, line)) => CliError::validation(format!("{origin}:{line}: {msg}")),
            None => CliError::validation(msg),
        };
        let c = &self.config;
        let mut model = c.model.clone();
        model.n_fock = c.initial.cutoff(model.n_fock);
        if let Err(e) = model.validate() {
            return Err(anchor("model", model_error_key(&e), format!("model: {e}")));
        }
        if c.mode == Mode::Quantum || c.mode == Mode::Compare {
            if !(model.gamma_eff() > 0.0) && c.integration.time_unit == TimeUnit::GammaEff {
                return Err(anchor("integration", "time_unit", "integration: time_unit = gamma_eff needs Gamma_eff > 0".into()));
            }
            c.integration
                .core_config(&model)
                .validate(0.0)
                .map_err(|e| anchor("integration", "step_h", format!("integration: {e}")))?;
            c.initial.matter_density()?;
        }
        if c.integration.until_steady && !c.observers.qfunction_times.is_empty() {
            return Err(anchor("observers", "qfunction_times", "observers: Q-function snapshots need a fixed-time run".into()));
        }
        if c.observers.qfunction_times.iter().any(|t| !(*t >= 0.0) || *t > c.integration.t_final) {
            return Err(anchor("observers", "qfunction_times", "observers: snapshot times must lie in [0, t_final]".into()));
        }
        if c.observers.entanglement_stride == 0 {
            return Err(anchor("observers", "entanglement_stride", "observers: entanglement_stride must be >= 1".into()));
        }
        if c.mode == Mode::Semiclassical {
            c.semiclassical.params(&c.model)?;
        }
        if c.mode == Mode::ValidateJcm {
            c.jcm.params().validate().map_err(|e| anchor("jcm", "n_fock", format!("jcm: {e}")))?;
            if c.jcm.initial_photons + 1 >= c.jcm.n_fock {
                return Err(anchor("jcm", "initial_photons", "jcm: initial_photons must be below n_fock - 1".into()));
            }
            if !(c.jcm.step_h > 0.0) || !(c.jcm.t_final >= c.jcm.step_h) || c.jcm.sample_stride == 0 {
                return Err(anchor("jcm", "step_h", "jcm: need step_h > 0, t_final >= step_h, sample_stride >= 1".into()));
            }
        }
        if c.mode == Mode::Compare && c.compare.alphas.iter().any(|a| !(*a >= 0.0)) {
            return Err(anchor("compare", "alphas", "compare: amplitudes must be >= 0".into()));
        }
        let resolved = toml::Value::try_from(&self.config).expect("configuration serializes");
        for axis in &c.sweep {
            if axis.parameter.starts_with("sweep") || lookup(&resolved, &axis.parameter).is_none() {
                return Err(anchor("sweep", "parameter", format!("sweep: unknown parameter {}", axis.parameter)));
            }
            if axis.values.is_empty() {
                return Err(anchor("sweep", "values", format!("sweep: axis {} has no values", axis.parameter)));
            }
        }
        Ok(())
    }
}

fn model_error_key(e: &edjcm_core::error::ModelError) -> &'static str {
    match e {
        edjcm_core::error::ModelError::InvalidParameter { name, .. } => match *name {
            "omega_c" | "omega_h" | "omega_s" => "omega1",
            n => n,
        },
        edjcm_core::error::ModelError::CutoffTooSmall { .. } => "n_fock",
        _ => "",
    }
}

/// 1-based line of `key` inside `[section]`, or of the section header.
pub fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix("[[").and_then(|l| l.strip_suffix("]]")).or_else(|| line.strip_prefix('[').and_then(|l| l.strip_suffix(']'))) {
            current = name.trim().to_string();
            if current == section && header.is_none() {
                header = Some(i + 1);
            }
            continue;
        }
        if current == section && !key.is_empty() {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    header
}

/// TOML literal if it parses as one, otherwise a bare string.
pub fn parse_value(s: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {s}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(s.to_string()))
}

pub fn set_path(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<(), String> {
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(format!("malformed key {key}"));
    }
    let mut cur = table;
    for part in &parts[..parts.len() - 1] {
        let entry = cur.entry(part.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry.as_table_mut().ok_or_else(|| format!("{part} is not a section"))?;
    }
    cur.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

pub fn lookup<'a>(v: &'a toml::Value, key: &str) -> Option<&'a toml::Value> {
    key.split('.').try_fold(v, |cur, part| cur.as_table()?.get(part))
}

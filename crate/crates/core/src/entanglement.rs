// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Conditional entropies and the partial-transpose witness.

use serde::Serialize;

use crate::error::LinalgError;
use crate::integrator::{Observer, Sample};
use crate::linalg::{eigvalsh, BipartiteDims, ComplexMatrix, Subsystem};
use crate::linalg::entropy::entropy_of_spectrum;
use crate::model::BlockState;

/// Default |lambda_min| above which the witness counts as substantial.
pub const PT_THRESHOLD: f64 = 1e-4;
/// Relative spread allowed between truncations for a negative eigenvalue to count as physical.
pub const PERSISTENCE_TOLERANCE: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConditionalEntropies {
    pub s_mf: f64,
    pub s_m: f64,
    pub s_f: f64,
    /// S(m|f) = S_mf - S_f
    pub s_cond_m: f64,
    /// S(f|m) = S_mf - S_m
    pub s_cond_f: f64,
}

impl ConditionalEntropies {
    pub fn mutual_information(&self) -> f64 {
        self.s_m + self.s_f - self.s_mf
    }
}

pub fn conditional_entropies(rho: &ComplexMatrix<f64>, dims: BipartiteDims) -> Result<ConditionalEntropies, LinalgError> {
    let s_mf = entropy_of_spectrum(&eigvalsh(rho)?)?;
    let s_m = entropy_of_spectrum(&eigvalsh(&dims.partial_trace(rho, Subsystem::Matter)?)?)?;
    let s_f = entropy_of_spectrum(&eigvalsh(&dims.partial_trace(rho, Subsystem::Field)?)?)?;
    Ok(ConditionalEntropies { s_mf, s_m, s_f, s_cond_m: s_mf - s_f, s_cond_f: s_mf - s_m })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartialTransposeSpectrum {
    pub min_eigenvalue: f64,
    /// Sum of the negative eigenvalues (<= 0).
    pub negative_mass: f64,
}

pub fn partial_transpose_spectrum(
    rho: &ComplexMatrix<f64>,
    dims: BipartiteDims,
) -> Result<PartialTransposeSpectrum, LinalgError> {
    let values = eigvalsh(&dims.partial_transpose_field(rho)?)?;
    Ok(PartialTransposeSpectrum {
        min_eigenvalue: values.first().copied().unwrap_or(0.0),
        negative_mass: values.iter().filter(|&&v| v < 0.0).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementRecord {
    pub time: f64,
    pub s_cond_m: f64,
    pub s_cond_f: f64,
    /// Witness at the largest truncation.
    pub min_pt_eigenvalue: f64,
    pub pt_negative_mass: f64,
    /// (cutoff, min PT eigenvalue) for every truncation examined.
    pub per_truncation: Vec<(usize, f64)>,
    pub truncation_verified: bool,
}

impl EntanglementRecord {
    pub fn substantial(&self, threshold: f64) -> bool {
        self.min_pt_eigenvalue < -threshold
    }
}

/// Peres test on the same physical state at increasing truncations.
///
/// `states` pairs each cutoff with the matter-field state propagated at that
/// cutoff. The negative eigenvalue is accepted as physical only when all
/// truncations report it below `-threshold` and agree to within
/// [`PERSISTENCE_TOLERANCE`] relative to the largest one.
pub fn peres_test(
    time: f64,
    states: &[(usize, &ComplexMatrix<f64>)],
    threshold: f64,
) -> Result<EntanglementRecord, LinalgError> {
    let mut per_truncation = Vec::with_capacity(states.len());
    let mut last = None;
    let mut sorted: Vec<_> = states.to_vec();
    sorted.sort_by_key(|(n, _)| *n);
    for &(n, rho) in &sorted {
        let dims = BipartiteDims::new(rho.rows() / n, n);
        let pt = partial_transpose_spectrum(rho, dims)?;
        per_truncation.push((n, pt.min_eigenvalue));
        last = Some((n, rho, dims, pt));
    }
    let (_, rho, dims, pt) = last.ok_or_else(|| LinalgError::DimensionMismatch {
        expected: "at least one truncation".into(),
        got: "none".into(),
    })?;
    let ce = conditional_entropies(rho, dims)?;
    let reference = pt.min_eigenvalue;
    let truncation_verified = per_truncation.len() >= 2
        && reference < -threshold
        && per_truncation.iter().all(|&(_, v)| v < -threshold && (v - reference).abs() <= PERSISTENCE_TOLERANCE * reference.abs());
    Ok(EntanglementRecord {
        time,
        s_cond_m: ce.s_cond_m,
        s_cond_f: ce.s_cond_f,
        min_pt_eigenvalue: pt.min_eigenvalue,
        pt_negative_mass: pt.negative_mass,
        per_truncation,
        truncation_verified,
    })
}

/// Records the witnesses on every `stride`-th sample of a single-truncation run.
pub struct EntanglementRecorder {
    pub stride: usize,
    pub records: Vec<(f64, ConditionalEntropies, PartialTransposeSpectrum)>,
    seen: usize,
}

impl EntanglementRecorder {
    pub fn new(stride: usize) -> Self {
        Self { stride: stride.max(1), records: Vec::new(), seen: 0 }
    }
}

pub fn block_witnesses(state: &BlockState<f64>) -> Result<(ConditionalEntropies, PartialTransposeSpectrum), LinalgError> {
    let rho = state.to_dense();
    let dims = state.layout().dims();
    Ok((conditional_entropies(&rho, dims)?, partial_transpose_spectrum(&rho, dims)?))
}

impl Observer for EntanglementRecorder {
    fn observe(&mut self, sample: &Sample<'_>) -> Result<(), String> {
        let take = self.seen % self.stride == 0;
        self.seen += 1;
        if take {
            let (ce, pt) = block_witnesses(sample.state).map_err(|e| e.to_string())?;
            self.records.push((sample.time, ce, pt));
        }
        Ok(())
    }
}

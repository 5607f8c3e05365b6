// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |A - A^dagger| = {error:e})")]
    NotHermitian { error: f64 },
    #[error("eigenvalue {value:e} below positivity floor -{floor:e}")]
    NegativeEigenvalue { value: f64, floor: f64 },
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("singular linear system")]
    Singular,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("Fock cutoff must be at least {min}, got {got}")]
    CutoffTooSmall { min: usize, got: usize },
    #[error("state is not compatible: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrationError {
    #[error("trace drift {drift:e} exceeds {limit:e} at t = {time}")]
    TraceDrift { time: f64, drift: f64, limit: f64 },
    #[error("positivity violated at t = {time}: minimum eigenvalue {min_eigenvalue:e}")]
    Positivity { time: f64, min_eigenvalue: f64 },
    #[error("top Fock level occupancy {occupancy:e} exceeds {limit:e} at t = {time} (N = {cutoff})")]
    Truncation { time: f64, occupancy: f64, limit: f64, cutoff: usize },
    #[error("non-finite state at t = {time}")]
    NonFinite { time: f64 },
    #[error("observer failed at t = {time}: {message}")]
    Observer { time: f64, message: String },
    #[error("invalid integration configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermoError {
    #[error("fewer than {needed} samples available ({got})")]
    TooFewSamples { needed: usize, got: usize },
    #[error("steady state not reached: {0}")]
    NotSteady(String),
    #[error("flux has a non-negligible imaginary part {imag:e} (real part {real:e})")]
    Imaginary { real: f64, imag: f64 },
    #[error("entropy production {sigma:e} at t = {time} violates the second law")]
    SecondLaw { time: f64, sigma: f64 },
    #[error("not in engine mode: Qdot_mH = {qdot_mh:e}")]
    NotEngine { qdot_mh: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemiclassicalError {
    #[error("invalid semiclassical parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("steady state did not converge within t = {t_max} (|drho/dt| = {rate:e})")]
    NotConverged { t_max: f64, rate: f64 },
    #[error("efficiency is undefined in case {case}: the drive is attenuated, not amplified")]
    NotAmplifier { case: char },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhaseSpaceError {
    #[error("coherent state amplitude |alpha| = {alpha} is too large for cutoff N = {cutoff} (tail {tail:e})")]
    CutoffTooSmall { alpha: f64, cutoff: usize, tail: f64 },
    #[error("invalid grid: {0}")]
    Grid(String),
}

/// Crate-level error.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Thermo(#[from] ThermoError),
    #[error(transparent)]
    Semiclassical(#[from] SemiclassicalError),
    #[error(transparent)]
    PhaseSpace(#[from] PhaseSpaceError),
}

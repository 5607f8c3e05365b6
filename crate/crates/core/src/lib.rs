// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Open-system dynamics and thermodynamics of a three-level maser coupled to
//! a single cavity mode and two thermal reservoirs.
//!
//! The numerical kernels are generic over [`scalar::Real`]; the aliases below
//! fix them to `f64`, which is what the run drivers use.

pub mod entanglement;
pub mod error;
pub mod integrator;
pub mod linalg;
pub mod model;
pub mod phase_space;
pub mod scalar;
pub mod semiclassical;
pub mod thermo;

pub use error::Error;

pub type Matrix = linalg::ComplexMatrix<f64>;
pub type State = model::BlockState<f64>;
pub type Generator = model::BlockGenerator<f64>;
pub type DenseState = model::BipartiteState<f64>;
pub type Operators = model::OperatorSet<f64>;
pub type Complex64 = num_complex::Complex<f64>;

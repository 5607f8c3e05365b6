// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! The matter driven by a classical field: equations of motion, exact steady
//! state and its fluxes.

pub mod dynamics;
pub mod landscape;
pub mod params;
pub mod printed;
pub mod steady;

pub use dynamics::{default_sc_step, sc_derivative, sc_lindblad, sc_propagate, ScPropagateConfig, ScState, ScTrajectory};
pub use landscape::{coherence_landscape, LandscapePoint};
pub use params::SemiclassicalParams;
pub use steady::{
    closed_form, constants, sc_efficiency, sc_fluxes, sc_fluxes_from_state, sc_steady_state, scovil_inversion_ratio,
    solve_stationary, steady_residual, Case, ScEfficiency, ScFluxes, SteadyConstants, SteadyStateSolution,
};

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Thermodynamic ledger of the matter-field system.

pub mod audit;
pub mod fluxes;
pub mod record;
pub mod steady;

pub use audit::{first_law_audit, AuditSummary, FirstLawResiduals, FluxRecorder};
pub use fluxes::{
    check_second_law, engine_efficiency, entropy_production, heat_flux, power, Efficiency, EntropyMode, EntropyProduction, HeatFluxes,
    ThermoContext,
};
pub use record::{FluxRecord, CSV_HEADER};
pub use steady::{run_to_matter_steady_state, SteadyCriteria, SteadyRun};

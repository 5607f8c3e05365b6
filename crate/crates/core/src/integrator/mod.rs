// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

pub mod fit;
pub mod oracle;
pub mod propagate;
pub mod rk4;

pub use fit::{linear_fit, steady_state_power_fit, LinearFit, PowerFit};
pub use oracle::liouvillian_expm_oracle;
pub use propagate::{continue_from, propagate, propagate_from, SkipFirst, ExtendPolicy, IntegrationConfig, Observer, Sample, SampleDiagnostics, Trajectory};
pub use rk4::{Flow, Rk4, SuperoperatorFlow};

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

pub mod blocks;
pub mod jcm;
pub mod liouvillian;
pub mod operators;
pub mod params;
pub mod state;

pub use blocks::{BlockGenerator, BlockState, SectorLayout};
pub use jcm::{damped_jcm_lindblad, JcmParams};
pub use liouvillian::{edjcm_lindblad, Channel, DenseLindblad, Reservoir};
pub use operators::OperatorSet;
pub use params::{recommended_cutoff, reservoir_temperature, ModelParams, Temperature};
pub use state::BipartiteState;

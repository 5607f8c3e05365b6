// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

pub mod bipartite;
pub mod eigen;
pub mod entropy;
pub mod expm;
pub mod matrix;
pub mod solve;

pub use bipartite::{BipartiteDims, Subsystem};
pub use eigen::{eigh, eigvalsh, HermitianEigen};
pub use entropy::{entropy_rate, von_neumann_entropy, POSITIVITY_FLOOR};
pub use expm::expm;
pub use matrix::ComplexMatrix;
pub use solve::solve_dense;

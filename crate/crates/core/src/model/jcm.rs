// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Resonant two-level Jaynes-Cummings model with thermal atomic damping, in
//! the interaction picture. Matter index 0 = |g>, 1 = |e>.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::linalg::{BipartiteDims, ComplexMatrix};
use crate::model::liouvillian::{Channel, DenseLindblad, Reservoir};
use crate::model::operators::{annihilation, transition};
use crate::scalar::{lit, Real};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JcmParams {
    pub gamma: f64,
    pub n_th: f64,
    pub lambda: f64,
    pub n_fock: usize,
}

impl JcmParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [("gamma", self.gamma), ("n_th", self.n_th), ("lambda", self.lambda)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(ModelError::InvalidParameter { name, reason: format!("must be finite and >= 0, got {v}") });
            }
        }
        if self.n_fock < 2 {
            return Err(ModelError::CutoffTooSmall { min: 2, got: self.n_fock });
        }
        Ok(())
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims::new(2, self.n_fock)
    }
}

/// `-i[lambda(sigma- a^dag + sigma+ a), rho]` plus thermal decay of the atom.
pub fn damped_jcm_lindblad<T: Real>(p: &JcmParams) -> Result<DenseLindblad<T>, ModelError> {
    p.validate()?;
    let id_f = ComplexMatrix::<T>::identity(p.n_fock);
    let sm = transition::<T>(2, 0, 1).kron(&id_f);
    let sp = sm.dagger();
    let a = ComplexMatrix::<T>::identity(2).kron(&annihilation::<T>(p.n_fock));
    let coupling = sm.matmul(&a.dagger());
    let v = (&coupling + &coupling.dagger()).scale_real(lit(p.lambda));
    // A single reservoir; tagged Hot so reservoir-resolved queries stay meaningful.
    Ok(DenseLindblad {
        hamiltonian: v,
        channels: vec![
            Channel::new(Reservoir::Hot, lit(p.gamma * (p.n_th + 1.0)), sm),
            Channel::new(Reservoir::Hot, lit(p.gamma * p.n_th), sp),
        ],
    })
}

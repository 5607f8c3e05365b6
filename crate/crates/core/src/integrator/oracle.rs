// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Reference propagation through the exponential of the Liouvillian supermatrix.

use crate::error::IntegrationError;
use crate::linalg::{expm, ComplexMatrix};
use crate::model::DenseLindblad;
use crate::scalar::{lit, Real};

/// Largest Hilbert-space dimension accepted by the oracle.
pub const MAX_ORACLE_DIM: usize = 36;

/// exp(L t) applied to rho0.
pub fn liouvillian_expm_oracle<T: Real>(
    model: &DenseLindblad<T>,
    rho0: &ComplexMatrix<T>,
    t: f64,
) -> Result<ComplexMatrix<T>, IntegrationError> {
    let n = model.dim();
    if n > MAX_ORACLE_DIM {
        return Err(IntegrationError::Config(format!("oracle dimension {n} exceeds {MAX_ORACLE_DIM}")));
    }
    if rho0.rows() != n || rho0.cols() != n {
        return Err(IntegrationError::Config(format!("state is {}x{}, model is {n}", rho0.rows(), rho0.cols())));
    }
    let prop = expm(&model.supermatrix().scale_real(lit(t)));
    let v = prop.apply(rho0.as_slice());
    Ok(ComplexMatrix::from_vec(n, n, v).expect("size preserved"))
}

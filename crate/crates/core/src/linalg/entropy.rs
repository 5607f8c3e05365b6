// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Von Neumann entropy and its rate.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::LinalgError;
use crate::linalg::eigen::{eigh, eigvalsh};
use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::{lit, Real};

/// Eigenvalues below `-POSITIVITY_FLOOR` are a hard error; the rest are clamped to zero.
pub const POSITIVITY_FLOOR: f64 = 1e-9;

/// S = -sum p ln p over a spectrum, with 0 ln 0 = 0.
pub fn entropy_of_spectrum<T: Real>(values: &[T]) -> Result<T, LinalgError> {
    let floor = lit::<T>(POSITIVITY_FLOOR);
    let mut s = T::zero();
    for &p in values {
        if p < -floor {
            return Err(LinalgError::NegativeEigenvalue {
                value: p.to_f64().unwrap_or(f64::NAN),
                floor: POSITIVITY_FLOOR,
            });
        }
        if p > T::zero() {
            s -= p * p.ln();
        }
    }
    Ok(s)
}

pub fn von_neumann_entropy<T: Real>(rho: &ComplexMatrix<T>) -> Result<T, LinalgError> {
    entropy_of_spectrum(&eigvalsh(rho)?)
}

/// dS/dt = -Tr(rho_dot ln rho) (the Tr rho_dot term vanishes for trace-preserving flow).
///
/// Eigenvalues are floored at `log_floor` before the logarithm, so directions
/// with vanishing population contribute a bounded amount.
pub fn entropy_rate<T: Real>(
    rho: &ComplexMatrix<T>,
    rho_dot: &ComplexMatrix<T>,
    log_floor: T,
) -> Result<T, LinalgError> {
    let eig = eigh(rho)?;
    entropy_rate_with(&eig.values, &eig.vectors, rho_dot, log_floor)
}

/// Same as [`entropy_rate`] with a precomputed eigensystem of rho.
pub fn entropy_rate_with<T: Real>(
    values: &[T],
    vectors: &ComplexMatrix<T>,
    rho_dot: &ComplexMatrix<T>,
    log_floor: T,
) -> Result<T, LinalgError> {
    let n = values.len();
    if rho_dot.rows() != n || rho_dot.cols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", rho_dot.rows(), rho_dot.cols()),
        });
    }
    let mut rate = T::zero();
    for (k, &p) in values.iter().enumerate() {
        // <u_k| rho_dot |u_k>
        let mut diag = Complex::<T>::zero();
        for i in 0..n {
            let ui = vectors[(i, k)].conj();
            if ui.is_zero() {
                continue;
            }
            let mut row = Complex::<T>::zero();
            for j in 0..n {
                row += rho_dot[(i, j)] * vectors[(j, k)];
            }
            diag += ui * row;
        }
        rate -= diag.re * p.max(log_floor).ln();
    }
    Ok(rate)
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense real linear systems.

use num_traits::Float;

use crate::error::LinalgError;

/// Solves `a x = b` by Gaussian elimination with partial pivoting. `a` is row-major n x n.
pub fn solve_dense<T: Float>(a: &[T], b: &[T]) -> Result<Vec<T>, LinalgError> {
    let n = b.len();
    if a.len() != n * n {
        return Err(LinalgError::DimensionMismatch { expected: format!("{} entries", n * n), got: format!("{} entries", a.len()) });
    }
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().partial_cmp(&m[j * n + col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        if m[piv * n + col] == T::zero() {
            return Err(LinalgError::Singular);
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let p = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                let v = m[col * n + k];
                m[r * n + k] = m[r * n + k] - f * v;
            }
            x[r] = x[r] - f * x[col];
        }
    }
    for r in (0..n).rev() {
        let mut s = x[r];
        for k in r + 1..n {
            s = s - m[r * n + k] * x[k];
        }
        x[r] = s / m[r * n + r];
    }
    Ok(x)
}

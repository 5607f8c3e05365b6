// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring of a truncated Taylor series.

use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::{from_usize, lit, Real};

pub fn expm<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    assert!(a.is_square(), "expm of a non-square matrix");
    let n = a.rows();
    let norm = a.norm_one();
    let mut squarings = 0u32;
    let mut scale = T::one();
    let half = lit::<T>(0.5);
    while norm * scale > half {
        scale = scale * half;
        squarings += 1;
    }
    let x = a.scale_real(scale);
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=40usize {
        term = term.matmul(&x).scale_real(T::one() / from_usize::<T>(k));
        result += &term;
        if term.max_abs() <= T::epsilon() * result.max_abs() * lit::<T>(0.01) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Matter (x) field tensor structure. The matter index is the slow one:
//! dense index = a * dim_f + n.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub matter: usize,
    pub field: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    Matter,
    Field,
}

impl BipartiteDims {
    pub fn new(matter: usize, field: usize) -> Self {
        Self { matter, field }
    }

    pub fn total(&self) -> usize {
        self.matter * self.field
    }

    #[inline]
    pub fn index(&self, a: usize, n: usize) -> usize {
        a * self.field + n
    }

    fn check<T: Real>(&self, rho: &ComplexMatrix<T>) -> Result<(), LinalgError> {
        if rho.rows() != self.total() || rho.cols() != self.total() {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{0}x{0}", self.total()),
                got: format!("{}x{}", rho.rows(), rho.cols()),
            });
        }
        Ok(())
    }

    /// Reduced state of `keep`.
    pub fn partial_trace<T: Real>(
        &self,
        rho: &ComplexMatrix<T>,
        keep: Subsystem,
    ) -> Result<ComplexMatrix<T>, LinalgError> {
        self.check(rho)?;
        let (dm, df) = (self.matter, self.field);
        Ok(match keep {
            Subsystem::Matter => ComplexMatrix::from_fn(dm, dm, |a, b| {
                (0..df).fold(Complex::zero(), |acc, n| acc + rho[(self.index(a, n), self.index(b, n))])
            }),
            Subsystem::Field => ComplexMatrix::from_fn(df, df, |n, m| {
                (0..dm).fold(Complex::zero(), |acc, a| acc + rho[(self.index(a, n), self.index(a, m))])
            }),
        })
    }

    /// Transpose on the field factor.
    pub fn partial_transpose_field<T: Real>(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>, LinalgError> {
        self.check(rho)?;
        let df = self.field;
        Ok(ComplexMatrix::from_fn(self.total(), self.total(), |r, c| {
            let (a, n) = (r / df, r % df);
            let (b, m) = (c / df, c % df);
            rho[(self.index(a, m), self.index(b, n))]
        }))
    }

    pub fn product_state<T: Real>(
        &self,
        rho_m: &ComplexMatrix<T>,
        rho_f: &ComplexMatrix<T>,
    ) -> Result<ComplexMatrix<T>, LinalgError> {
        if rho_m.rows() != self.matter || rho_f.rows() != self.field {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{} (x) {}", self.matter, self.field),
                got: format!("{} (x) {}", rho_m.rows(), rho_f.rows()),
            });
        }
        Ok(rho_m.kron(rho_f))
    }
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense tensor-product operators for the three-level matter and the cavity mode.

use num_complex::Complex;

use crate::linalg::{BipartiteDims, ComplexMatrix};
use crate::model::params::ModelParams;
use crate::scalar::{from_usize, lit, Real};

/// |i><j| on a `dim`-level system.
pub fn transition<T: Real>(dim: usize, i: usize, j: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(i, j)] = Complex::new(T::one(), T::zero());
    m
}

/// Truncated annihilation operator on `n` Fock states.
pub fn annihilation<T: Real>(n: usize) -> ComplexMatrix<T> {
    let mut a = ComplexMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex::new(from_usize::<T>(k).sqrt(), T::zero());
    }
    a
}

pub fn number<T: Real>(n: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_real_diagonal(&(0..n).map(from_usize::<T>).collect::<Vec<_>>())
}

/// Full-space operators. `sigma_ij` = |i><j| (x) 1_f.
#[derive(Clone, Debug)]
pub struct OperatorSet<T> {
    pub dims: BipartiteDims,
    pub h_m: ComplexMatrix<T>,
    pub h_f: ComplexMatrix<T>,
    pub v_mf: ComplexMatrix<T>,
    pub h_total: ComplexMatrix<T>,
    pub sigma01: ComplexMatrix<T>,
    pub sigma02: ComplexMatrix<T>,
    pub sigma21: ComplexMatrix<T>,
    pub a: ComplexMatrix<T>,
    pub a_dag: ComplexMatrix<T>,
}

impl<T: Real> OperatorSet<T> {
    pub fn build(p: &ModelParams) -> Self {
        let nf = p.n_fock;
        let dims = BipartiteDims::new(3, nf);
        let id_m = ComplexMatrix::<T>::identity(3);
        let id_f = ComplexMatrix::<T>::identity(nf);
        let a_f = annihilation::<T>(nf);
        let a = id_m.kron(&a_f);
        let a_dag = a.dagger();
        let h_m = ComplexMatrix::from_real_diagonal(&[lit(p.omega0), lit(p.omega1), lit(p.omega2)]).kron(&id_f);
        let h_f = id_m.kron(&number::<T>(nf)).scale_real(lit(p.omega_f));
        let sigma21 = transition::<T>(3, 2, 1).kron(&id_f);
        let coupling = sigma21.matmul(&a_dag);
        let v_mf = (&coupling + &coupling.dagger()).scale_real(lit(p.lambda));
        let h_total = &(&h_m + &h_f) + &v_mf;
        Self {
            dims,
            h_m,
            h_f,
            v_mf,
            h_total,
            sigma01: transition::<T>(3, 0, 1).kron(&id_f),
            sigma02: transition::<T>(3, 0, 2).kron(&id_f),
            sigma21,
            a,
            a_dag,
        }
    }
}

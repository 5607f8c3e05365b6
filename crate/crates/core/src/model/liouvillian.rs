// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense Lindblad generators.

use num_complex::Complex;

use crate::error::LinalgError;
use crate::linalg::ComplexMatrix;
use crate::model::operators::OperatorSet;
use crate::model::params::ModelParams;
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reservoir {
    Cold,
    Hot,
}

/// One dissipative channel `rate * (2 L rho L^dag - {L^dag L, rho})`.
#[derive(Clone, Debug)]
pub struct Channel<T> {
    pub reservoir: Reservoir,
    pub rate: T,
    pub jump: ComplexMatrix<T>,
    jump_dag: ComplexMatrix<T>,
    ldl: ComplexMatrix<T>,
}

impl<T: Real> Channel<T> {
    pub fn new(reservoir: Reservoir, rate: T, jump: ComplexMatrix<T>) -> Self {
        let jump_dag = jump.dagger();
        let ldl = jump_dag.matmul(&jump);
        Self { reservoir, rate, jump, jump_dag, ldl }
    }

    fn apply_into(&self, rho: &ComplexMatrix<T>, out: &mut ComplexMatrix<T>) {
        if self.rate == T::zero() {
            return;
        }
        let two = T::one() + T::one();
        let sandwich = self.jump.matmul(rho).matmul(&self.jump_dag).scale_real(two);
        let anti = self.ldl.anticommutator(rho);
        let term = (&sandwich - &anti).scale_real(self.rate);
        *out += &term;
    }
}

/// `drho/dt = -i[H, rho] + sum_k D_k[rho]`.
#[derive(Clone, Debug)]
pub struct DenseLindblad<T> {
    pub hamiltonian: ComplexMatrix<T>,
    pub channels: Vec<Channel<T>>,
}

impl<T: Real> DenseLindblad<T> {
    pub fn dim(&self) -> usize {
        self.hamiltonian.rows()
    }

    fn check(&self, rho: &ComplexMatrix<T>) -> Result<(), LinalgError> {
        if rho.rows() != self.dim() || rho.cols() != self.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{0}x{0}", self.dim()),
                got: format!("{}x{}", rho.rows(), rho.cols()),
            });
        }
        Ok(())
    }

    pub fn apply(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>, LinalgError> {
        self.check(rho)?;
        let mut out = self.hamiltonian.commutator(rho).scale(Complex::new(T::zero(), -T::one()));
        for ch in &self.channels {
            ch.apply_into(rho, &mut out);
        }
        Ok(out)
    }

    /// Dissipative part restricted to one reservoir (all channels when `None`).
    pub fn dissipator(&self, rho: &ComplexMatrix<T>, which: Option<Reservoir>) -> Result<ComplexMatrix<T>, LinalgError> {
        self.check(rho)?;
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for ch in self.channels.iter().filter(|c| which.is_none_or(|w| c.reservoir == w)) {
            ch.apply_into(rho, &mut out);
        }
        Ok(out)
    }

    /// Supermatrix acting on the row-major vectorization of rho
    /// (vec(A rho B) = (A (x) B^T) vec(rho)).
    pub fn supermatrix(&self) -> ComplexMatrix<T> {
        let n = self.dim();
        let id = ComplexMatrix::<T>::identity(n);
        let mi = Complex::new(T::zero(), -T::one());
        let mut l = &self.hamiltonian.kron(&id) - &id.kron(&self.hamiltonian.transpose());
        l = l.scale(mi);
        let two = T::one() + T::one();
        for ch in &self.channels {
            if ch.rate == T::zero() {
                continue;
            }
            let sandwich = ch.jump.kron(&ch.jump_dag.transpose()).scale_real(two);
            let anti = &ch.ldl.kron(&id) + &id.kron(&ch.ldl.transpose());
            l += &(&sandwich - &anti).scale_real(ch.rate);
        }
        l
    }
}

/// Interaction-picture ED-JCM generator.
pub fn edjcm_lindblad<T: Real>(p: &ModelParams, ops: &OperatorSet<T>) -> DenseLindblad<T> {
    let sigma10 = ops.sigma01.dagger();
    let sigma20 = ops.sigma02.dagger();
    DenseLindblad {
        hamiltonian: ops.v_mf.clone(),
        channels: vec![
            Channel::new(Reservoir::Cold, lit(p.gamma02 * (p.n02 + 1.0)), ops.sigma02.clone()),
            Channel::new(Reservoir::Cold, lit(p.gamma02 * p.n02), sigma20),
            Channel::new(Reservoir::Hot, lit(p.gamma01 * (p.n01 + 1.0)), ops.sigma01.clone()),
            Channel::new(Reservoir::Hot, lit(p.gamma01 * p.n01), sigma10),
        ],
    }
}

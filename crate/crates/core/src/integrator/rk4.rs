// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Classical fixed-step fourth-order Runge-Kutta on flat complex state vectors.

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::ComplexMatrix;
use crate::model::{BlockGenerator, DenseLindblad};
use crate::scalar::{lit, Real};

/// Autonomous linear or nonlinear vector field dy/dt = f(y).
pub trait Flow<T: Real> {
    fn dim(&self) -> usize;
    fn eval(&self, y: &[Complex<T>], dy: &mut [Complex<T>]);
}

impl<T: Real> Flow<T> for BlockGenerator<T> {
    fn dim(&self) -> usize {
        self.layout().len()
    }
    fn eval(&self, y: &[Complex<T>], dy: &mut [Complex<T>]) {
        self.apply(y, dy);
    }
}

/// Acts on the row-major flattening of the density matrix.
impl<T: Real> Flow<T> for DenseLindblad<T> {
    fn dim(&self) -> usize {
        self.dim() * self.dim()
    }
    fn eval(&self, y: &[Complex<T>], dy: &mut [Complex<T>]) {
        let n = DenseLindblad::dim(self);
        let rho = ComplexMatrix::from_vec(n, n, y.to_vec()).expect("flat state of matching size");
        let out = self.apply(&rho).expect("dimension checked above");
        dy.copy_from_slice(out.as_slice());
    }
}

/// Matrix-vector flow through a precomputed supermatrix.
#[derive(Clone, Debug)]
pub struct SuperoperatorFlow<T> {
    pub matrix: ComplexMatrix<T>,
}

impl<T: Real> SuperoperatorFlow<T> {
    pub fn new(model: &DenseLindblad<T>) -> Self {
        Self { matrix: model.supermatrix() }
    }
}

impl<T: Real> Flow<T> for SuperoperatorFlow<T> {
    fn dim(&self) -> usize {
        self.matrix.rows()
    }
    fn eval(&self, y: &[Complex<T>], dy: &mut [Complex<T>]) {
        let n = self.matrix.rows();
        for (i, out) in dy.iter_mut().enumerate().take(n) {
            *out = self.matrix.row(i).iter().zip(y).fold(Complex::zero(), |acc, (&a, &x)| acc + a * x);
        }
    }
}

/// Holds the stage buffers so that stepping does not allocate.
#[derive(Clone, Debug)]
pub struct Rk4<T> {
    k1: Vec<Complex<T>>,
    k2: Vec<Complex<T>>,
    k3: Vec<Complex<T>>,
    k4: Vec<Complex<T>>,
    tmp: Vec<Complex<T>>,
}

impl<T: Real> Rk4<T> {
    pub fn new(dim: usize) -> Self {
        let z = vec![Complex::zero(); dim];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    pub fn dim(&self) -> usize {
        self.k1.len()
    }

    pub fn step<F: Flow<T> + ?Sized>(&mut self, flow: &F, y: &mut [Complex<T>], h: T) {
        assert_eq!(y.len(), self.k1.len(), "state size does not match stepper");
        let half = h * lit(0.5);
        flow.eval(y, &mut self.k1);
        for ((t, &yi), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *t = yi + k * half;
        }
        flow.eval(&self.tmp, &mut self.k2);
        for ((t, &yi), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *t = yi + k * half;
        }
        flow.eval(&self.tmp, &mut self.k3);
        for ((t, &yi), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *t = yi + k * h;
        }
        flow.eval(&self.tmp, &mut self.k4);
        let sixth = h / lit(6.0);
        let two: T = lit(2.0);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += (self.k1[i] + (self.k2[i] + self.k3[i]) * two + self.k4[i]) * sixth;
        }
    }

    pub fn integrate<F: Flow<T> + ?Sized>(&mut self, flow: &F, y: &mut [Complex<T>], h: T, steps: usize) {
        for _ in 0..steps {
            self.step(flow, y, h);
        }
    }
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::ModelError;
use crate::linalg::{eigvalsh, BipartiteDims, ComplexMatrix, POSITIVITY_FLOOR};
use crate::scalar::{lit, Real};

/// Dense matter-field density matrix at a given time.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState<T> {
    pub rho: ComplexMatrix<T>,
    pub dims: BipartiteDims,
    pub time: f64,
}

/// Tolerances of [`BipartiteState::validate`].
pub const TRACE_TOLERANCE: f64 = 1e-8;
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

impl<T: Real> BipartiteState<T> {
    pub fn new(rho: ComplexMatrix<T>, dims: BipartiteDims, time: f64) -> Result<Self, ModelError> {
        if rho.rows() != dims.total() || rho.cols() != dims.total() {
            return Err(ModelError::Incompatible(format!(
                "{}x{} matrix for dims {}x{}",
                rho.rows(),
                rho.cols(),
                dims.matter,
                dims.field
            )));
        }
        Ok(Self { rho, dims, time })
    }

    /// Checks trace, Hermiticity and the positivity floor.
    pub fn validate(&self) -> Result<(), ModelError> {
        let tr = self.rho.trace();
        if (tr.re - T::one()).abs() > lit(TRACE_TOLERANCE) || tr.im.abs() > lit(TRACE_TOLERANCE) {
            return Err(ModelError::Incompatible(format!("trace {tr} differs from 1")));
        }
        let h = self.rho.hermiticity_error();
        if h > lit(HERMITIAN_TOLERANCE) {
            return Err(ModelError::Incompatible(format!("hermiticity error {h:e}")));
        }
        let min = eigvalsh(&self.rho)?.first().copied().unwrap_or(T::zero());
        if min < -lit::<T>(POSITIVITY_FLOOR) {
            return Err(ModelError::Incompatible(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

/// Projector onto one matter level.
pub fn matter_level<T: Real>(dim: usize, level: usize) -> Result<ComplexMatrix<T>, ModelError> {
    if level >= dim {
        return Err(ModelError::InvalidParameter { name: "level", reason: format!("{level} >= {dim}") });
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(level, level)] = num_complex::Complex::new(T::one(), T::zero());
    Ok(m)
}

/// Diagonal mixture with the given (unnormalized, non-negative) weights.
pub fn matter_mixture<T: Real>(weights: &[f64]) -> Result<ComplexMatrix<T>, ModelError> {
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| !(w >= 0.0)) || !(total > 0.0) {
        return Err(ModelError::InvalidParameter { name: "mixture", reason: format!("weights must be >= 0 with positive sum: {weights:?}") });
    }
    Ok(ComplexMatrix::from_real_diagonal(&weights.iter().map(|&w| lit::<T>(w / total)).collect::<Vec<_>>()))
}

/// Fock projector |n><n| on `n_fock` levels.
pub fn fock_state<T: Real>(n_fock: usize, n: usize) -> Result<ComplexMatrix<T>, ModelError> {
    if n >= n_fock {
        return Err(ModelError::CutoffTooSmall { min: n + 1, got: n_fock });
    }
    matter_level(n_fock, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subsystem;
    use num_complex::Complex;

    #[test]
    fn initial_product_reduction() {
        let dims = BipartiteDims::new(3, 4);
        let rho = matter_level::<f64>(3, 1).unwrap().kron(&fock_state(4, 0).unwrap());
        let s = BipartiteState::new(rho, dims, 0.0).unwrap();
        s.validate().unwrap();
        let rm = dims.partial_trace(&s.rho, Subsystem::Matter).unwrap();
        assert_eq!(rm, ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0]));
    }

    #[test]
    fn bell_like_reduction() {
        let dims = BipartiteDims::new(3, 4);
        let n = 1;
        let mut psi = vec![Complex::new(0.0, 0.0); 12];
        psi[dims.index(1, n)] = Complex::new(0.5f64.sqrt(), 0.0);
        psi[dims.index(2, n + 1)] = Complex::new(0.5f64.sqrt(), 0.0);
        let rho = ComplexMatrix::outer(&psi, &psi);
        let rm = dims.partial_trace(&rho, Subsystem::Matter).unwrap();
        assert!((&rm - &ComplexMatrix::from_real_diagonal(&[0.0, 0.5, 0.5])).max_abs() < 1e-15);
    }

    #[test]
    fn mixture_normalizes() {
        let m = matter_mixture::<f64>(&[1.0, 1.0, 2.0]).unwrap();
        assert!((m.trace().re - 1.0).abs() < 1e-15);
        assert!(matter_mixture::<f64>(&[0.0, 0.0, 0.0]).is_err());
    }
}

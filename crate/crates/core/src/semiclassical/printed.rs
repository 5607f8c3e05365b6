// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! The literature polynomials for the steady-state constants, transcribed term
//! by term.
//!
//! They solve the stationary system with the rho_12 balance row divided by an
//! extra factor lambda_sc, hence lambda^3 where the physical form has lambda^2.
//! Two terms are misprinted on top of that: `a` repeats `2 g02^2 g01 n02`
//! where `g02^2 g01 n02^2` belongs, and `f` lacks `2 g01^2 g02 n02 + 2 g01 g02^2 n01`.
//! [`corrected`] fixes only those two.

use num_traits::Num;

use crate::error::SemiclassicalError;
use crate::semiclassical::params::SemiclassicalParams;
use crate::semiclassical::steady::{solve_system, SteadyConstants};

fn k<T: Num>(n: u32) -> T {
    (0..n).fold(T::zero(), |acc, _| acc + T::one())
}

/// As published, misprints included.
pub fn literature_constants<T: Clone + Num>(g01: T, g02: T, n01: T, n02: T, lambda: T) -> SteadyConstants<T> {
    let l3 = lambda.clone() * lambda.clone() * lambda.clone();
    let (a1, a2) = (g01.clone(), g02.clone());
    let (x, y) = (n01.clone(), n02.clone());
    let a2a1a1 = a2.clone() * a1.clone() * a1.clone();
    let a2a2a1 = a2.clone() * a2.clone() * a1.clone();

    let a = l3.clone() * a2.clone()
        + l3.clone() * a1.clone()
        + l3.clone() * a2.clone() * y.clone()
        + l3.clone() * a1.clone() * x.clone()
        + a2a1a1.clone()
        + a2a1a1.clone() * y.clone()
        + k::<T>(2) * a2a1a1.clone() * x.clone()
        + a2a1a1.clone() * x.clone() * x.clone()
        + k::<T>(2) * a2a1a1.clone() * y.clone() * x.clone()
        + a2a1a1.clone() * y.clone() * x.clone() * x.clone()
        + a2a2a1.clone()
        + k::<T>(2) * a2a2a1.clone() * y.clone()
        + k::<T>(2) * a2a2a1.clone() * y.clone()
        + a2a2a1.clone() * x.clone()
        + k::<T>(2) * a2a2a1.clone() * y.clone() * x.clone()
        + a2a2a1.clone() * y.clone() * y.clone() * x.clone();

    let b = l3.clone() * a2.clone() * y.clone()
        + l3.clone() * a1.clone() * x.clone()
        + a2a1a1.clone() * x.clone()
        + a2a1a1.clone() * x.clone() * x.clone()
        + a2a1a1.clone() * y.clone() * x.clone()
        + a2a1a1.clone() * y.clone() * x.clone() * x.clone()
        + a2a2a1.clone() * x.clone()
        + k::<T>(2) * a2a2a1.clone() * y.clone() * x.clone()
        + a2a2a1.clone() * y.clone() * y.clone() * x.clone();

    let c = l3.clone() * a2.clone() * y.clone()
        + l3.clone() * a1.clone() * x.clone()
        + a2a1a1.clone() * y.clone()
        + k::<T>(2) * a2a1a1.clone() * y.clone() * x.clone()
        + a2a1a1.clone() * y.clone() * x.clone() * x.clone()
        + a2a2a1.clone() * y.clone()
        + a2a2a1.clone() * y.clone() * y.clone()
        + a2a2a1.clone() * y.clone() * x.clone()
        + a2a2a1.clone() * y.clone() * y.clone() * x.clone();

    let d = lambda.clone() * lambda * a2.clone() * a1.clone() * (x.clone() - y.clone());

    let f = l3.clone() * a2.clone()
        + l3.clone() * a1.clone()
        + k::<T>(3) * l3.clone() * a2.clone() * y.clone()
        + k::<T>(3) * l3 * a1 * x.clone()
        + a2a1a1.clone()
        + k::<T>(3) * a2a1a1.clone() * x.clone()
        + k::<T>(2) * a2a1a1.clone() * x.clone() * x.clone()
        + k::<T>(5) * a2a1a1.clone() * y.clone() * x.clone()
        + k::<T>(3) * a2a1a1 * y.clone() * x.clone() * x.clone()
        + a2a2a1.clone()
        + k::<T>(3) * a2a2a1.clone() * y.clone()
        + k::<T>(2) * a2a2a1.clone() * y.clone() * y.clone()
        + k::<T>(5) * a2a2a1.clone() * y.clone() * x.clone()
        + k::<T>(3) * a2a2a1 * y.clone() * y * x;
    SteadyConstants { a, b, c, d, f }
}

/// [`literature_constants`] with the two misprinted terms repaired.
pub fn corrected<T: Clone + Num>(g01: T, g02: T, n01: T, n02: T, lambda: T) -> SteadyConstants<T> {
    let mut s = literature_constants(g01.clone(), g02.clone(), n01.clone(), n02.clone(), lambda);
    let a2a2a1 = g02.clone() * g02.clone() * g01.clone();
    let a2a1a1 = g02 * g01.clone() * g01;
    s.a = s.a - k::<T>(2) * a2a2a1.clone() * n02.clone() + a2a2a1.clone() * n02.clone() * n02.clone();
    s.f = s.f + k::<T>(2) * a2a1a1 * n02 + k::<T>(2) * a2a2a1 * n01;
    s
}

pub fn literature(p: &SemiclassicalParams) -> SteadyConstants<f64> {
    literature_constants(p.gamma01, p.gamma02, p.n01, p.n02, p.lambda_sc)
}

/// B/C from the literature polynomials.
pub fn literature_inversion_ratio(p: &SemiclassicalParams) -> f64 {
    let s = literature(p);
    s.b / s.c
}

/// (rho_00, rho_11, rho_22, Im rho_12) of the system the literature polynomials solve.
pub fn literature_system(p: &SemiclassicalParams) -> Result<[f64; 4], SemiclassicalError> {
    solve_system(p, p.lambda_sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn misprints_break_the_trace_identity() {
        let args = || (q(1, 1000), q(3, 1000), q(10, 1), q(1, 10), q(7, 3));
        let (a, b, c, d, e) = args();
        let lit = literature_constants(a, b, c, d, e);
        assert_ne!(lit.a.clone() + lit.b.clone() + lit.c.clone(), lit.f);
        let (a, b, c, d, e) = args();
        let fixed = corrected(a, b, c, d, e);
        assert_eq!(fixed.a.clone() + fixed.b.clone() + fixed.c.clone(), fixed.f);
    }

    #[test]
    fn corrected_polynomials_solve_their_system() {
        for lam in [0.1, 1.0, 10.0] {
            let mut p = SemiclassicalParams::reference(lam);
            p.gamma02 = 0.003;
            let s = corrected(p.gamma01, p.gamma02, p.n01, p.n02, p.lambda_sc);
            let x = literature_system(&p).unwrap();
            for (got, want) in [(s.a / s.f, x[0]), (s.b / s.f, x[1]), (s.c / s.f, x[2]), (s.d / s.f, x[3])] {
                assert!((got - want).abs() < 1e-12 * want.abs().max(1e-3), "{got} vs {want}");
            }
            assert!((literature_inversion_ratio(&p) - x[1] / x[2]).abs() < 1e-12);
        }
    }
}

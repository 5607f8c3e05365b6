// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Hermitian eigendecomposition.
//!
//! Householder reduction to a complex tridiagonal form, a diagonal unitary
//! that makes the off-diagonal real, then implicit QL with Wilkinson shifts.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Eigenvalues in ascending order; column `j` of `vectors` belongs to `values[j]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

/// Default tolerance on `max |A - A^dagger|` relative to `max |A|`.
pub fn hermitian_tolerance<T: Real>() -> T {
    T::epsilon().sqrt()
}

fn check_hermitian<T: Real>(a: &ComplexMatrix<T>) -> Result<(), LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let err = a.hermiticity_error();
    let scale = a.max_abs().max(T::one());
    if err > hermitian_tolerance::<T>() * scale {
        return Err(LinalgError::NotHermitian { error: err.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

pub fn eigh<T: Real>(a: &ComplexMatrix<T>) -> Result<HermitianEigen<T>, LinalgError> {
    check_hermitian(a)?;
    let (values, vectors) = decompose(a, true)?;
    Ok(HermitianEigen { values, vectors: vectors.expect("vectors requested") })
}

pub fn eigvalsh<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>, LinalgError> {
    check_hermitian(a)?;
    Ok(decompose(a, false)?.0)
}

fn decompose<T: Real>(
    input: &ComplexMatrix<T>,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<ComplexMatrix<T>>), LinalgError> {
    let n = input.rows();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| ComplexMatrix::zeros(0, 0))));
    }
    let mut a = input.hermitian_part();
    let mut q = want_vectors.then(|| ComplexMatrix::<T>::identity(n));
    let two = T::one() + T::one();

    let mut v = vec![Complex::<T>::zero(); n];
    let mut p = vec![Complex::<T>::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > T::zero() { x0 / x0.norm() } else { Complex::one() };
        let alpha = -phase * xnorm;
        for i in 0..n {
            v[i] = if i > k { a[(i, k)] } else { Complex::zero() };
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<T>().sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi = *vi / vnorm;
        }
        // p = B v on the trailing block
        for i in k + 1..n {
            let mut acc = Complex::zero();
            for j in k + 1..n {
                acc += a[(i, j)] * v[j];
            }
            p[i] = acc;
        }
        let kk: Complex<T> = (k + 1..n).fold(Complex::zero(), |acc, i| acc + v[i].conj() * p[i]);
        let kk = Complex::new(kk.re, T::zero());
        for i in k + 1..n {
            p[i] -= kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                a[(i, j)] -= upd * two;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = Complex::zero();
            a[(k, i)] = Complex::zero();
        }
        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let mut s = Complex::zero();
                for j in k + 1..n {
                    s += q[(r, j)] * v[j];
                }
                let s2 = s * two;
                for j in k + 1..n {
                    q[(r, j)] -= s2 * v[j].conj();
                }
            }
        }
    }

    let mut d: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![T::zero(); n];
    let mut phases = vec![Complex::<T>::one(); n];
    for k in 0..n - 1 {
        let ek = a[(k + 1, k)];
        let mag = ek.norm();
        e[k] = mag;
        phases[k + 1] = if mag > T::zero() { phases[k] * ek / mag } else { phases[k] };
    }

    let mut z = want_vectors.then(|| {
        let mut z = vec![T::zero(); n * n];
        for i in 0..n {
            z[i * n + i] = T::one();
        }
        z
    });
    tql2(&mut d, &mut e, z.as_deref_mut(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values: Vec<T> = order.iter().map(|&i| d[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // V = Q D Z, columns permuted by `order`
            let mut qd = q;
            for r in 0..n {
                for kcol in 0..n {
                    qd[(r, kcol)] = qd[(r, kcol)] * phases[kcol];
                }
            }
            let mut out = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for (jn, &jo) in order.iter().enumerate() {
                    let mut acc = Complex::zero();
                    for kk in 0..n {
                        acc += qd[(r, kk)] * z[kk * n + jo];
                    }
                    out[(r, jn)] = acc;
                }
            }
            Some(out)
        }
        _ => None,
    };
    Ok((values, vectors))
}

/// Symmetric tridiagonal QL. `e[i]` couples `d[i]` and `d[i+1]`; `z` is row-major n x n.
fn tql2<T: Real>(d: &mut [T], e: &mut [T], mut z: Option<&mut [T]>, n: usize) -> Result<(), LinalgError> {
    let two = T::one() + T::one();
    let eps = T::epsilon();
    e[n - 1] = T::zero();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 * n.max(1) {
                    return Err(LinalgError::NoConvergence);
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zk1 = z[k * n + i + 1];
                            let zk = z[k * n + i];
                            z[k * n + i + 1] = s * zk + c * zk1;
                            z[k * n + i] = c * zk - s * zk1;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Coherent states and the Husimi Q function of the field.

use std::f64::consts::PI;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::PhaseSpaceError;
use crate::linalg::ComplexMatrix;

/// Largest acceptable probability outside the truncated Fock space.
pub const COHERENT_TAIL_LIMIT: f64 = 1e-10;

/// <n|alpha> for n < len, untruncated (not renormalized).
///
/// Built in log magnitude so large |alpha| and n do not overflow.
pub fn coherent_amplitudes(alpha: Complex<f64>, len: usize) -> Vec<Complex<f64>> {
    let r = alpha.norm();
    let phase = if r > 0.0 { alpha / r } else { Complex::new(1.0, 0.0) };
    let mut out = Vec::with_capacity(len);
    if r == 0.0 {
        out.extend((0..len).map(|n| Complex::new(if n == 0 { 1.0 } else { 0.0 }, 0.0)));
        return out;
    }
    let ln_r = r.ln();
    let mut log_mag = -0.5 * r * r;
    let mut ph = Complex::new(1.0, 0.0);
    for n in 0..len {
        if n > 0 {
            log_mag += ln_r - 0.5 * (n as f64).ln();
            ph *= phase;
        }
        out.push(ph * log_mag.exp());
    }
    out
}

/// Truncated, renormalized coherent state vector.
pub fn coherent_state(alpha: Complex<f64>, n_fock: usize) -> Result<Vec<Complex<f64>>, PhaseSpaceError> {
    if n_fock == 0 {
        return Err(PhaseSpaceError::Grid("cutoff must be positive".into()));
    }
    let mut v = coherent_amplitudes(alpha, n_fock);
    let norm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let tail = (1.0 - norm2).max(0.0);
    if tail > COHERENT_TAIL_LIMIT {
        return Err(PhaseSpaceError::CutoffTooSmall { alpha: alpha.norm(), cutoff: n_fock, tail });
    }
    let s = norm2.sqrt();
    for c in &mut v {
        *c /= s;
    }
    Ok(v)
}

pub fn coherent_density(alpha: Complex<f64>, n_fock: usize) -> Result<ComplexMatrix<f64>, PhaseSpaceError> {
    let v = coherent_state(alpha, n_fock)?;
    Ok(ComplexMatrix::outer(&v, &v))
}

/// Square grid centred on the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl GridSpec {
    /// [-(|alpha|+4), |alpha|+4]^2 with 201 x 201 points.
    pub fn for_amplitude(alpha_abs: f64) -> Self {
        Self { half_width: alpha_abs + 4.0, points: 201 }
    }

    pub fn axis(&self) -> Vec<f64> {
        let n = self.points;
        (0..n).map(|i| -self.half_width + 2.0 * self.half_width * i as f64 / (n - 1) as f64).collect()
    }

    fn validate(&self) -> Result<(), PhaseSpaceError> {
        if self.points < 2 || !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return Err(PhaseSpaceError::Grid(format!("{self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QGrid {
    pub re_axis: Vec<f64>,
    pub im_axis: Vec<f64>,
    /// values[i][j] = Q(re_axis[j] + i im_axis[i])
    pub values: Vec<Vec<f64>>,
    pub time: f64,
    /// Riemann sum of Q over the grid.
    pub mass: f64,
}

impl QGrid {
    /// True when more than 1% of the distribution lies outside the grid.
    pub fn misses_mass(&self) -> bool {
        (1.0 - self.mass).abs() > 0.01
    }

    pub fn max(&self) -> f64 {
        self.values.iter().flatten().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    /// Plain-text matrix: a header line with the real axis, then one line per
    /// imaginary-axis value starting with that value.
    pub fn to_text(&self) -> String {
        let mut s = format!("# t = {:e}\n# im\\re", self.time);
        for x in &self.re_axis {
            s.push_str(&format!(" {x:.6e}"));
        }
        s.push('\n');
        for (y, row) in self.im_axis.iter().zip(&self.values) {
            s.push_str(&format!("{y:.6e}"));
            for v in row {
                s.push_str(&format!(" {v:.9e}"));
            }
            s.push('\n');
        }
        s
    }
}

fn is_fock_diagonal(rho: &ComplexMatrix<f64>) -> bool {
    let n = rho.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || rho[(i, j)].norm() == 0.0))
}

/// Q(alpha) = <alpha|rho|alpha>/pi.
pub fn q_value(rho: &ComplexMatrix<f64>, alpha: Complex<f64>) -> f64 {
    let n = rho.rows();
    let c = coherent_amplitudes(alpha, n);
    let mut acc = Complex::new(0.0, 0.0);
    for i in 0..n {
        let ci = c[i].conj();
        let mut row = Complex::new(0.0, 0.0);
        for j in 0..n {
            row += rho[(i, j)] * c[j];
        }
        acc += ci * row;
    }
    acc.re / PI
}

fn q_diagonal(p: &[f64], alpha: Complex<f64>) -> f64 {
    let c = coherent_amplitudes(alpha, p.len());
    c.iter().zip(p).map(|(ci, &pi)| pi * ci.norm_sqr()).sum::<f64>() / PI
}

pub fn husimi_q(rho_f: &ComplexMatrix<f64>, spec: GridSpec, time: f64) -> Result<QGrid, PhaseSpaceError> {
    spec.validate()?;
    if !rho_f.is_square() {
        return Err(PhaseSpaceError::Grid(format!("field state is {}x{}", rho_f.rows(), rho_f.cols())));
    }
    let axis = spec.axis();
    let diag: Option<Vec<f64>> = is_fock_diagonal(rho_f).then(|| (0..rho_f.rows()).map(|i| rho_f[(i, i)].re).collect());
    let values: Vec<Vec<f64>> = axis
        .par_iter()
        .map(|&y| {
            axis.iter()
                .map(|&x| {
                    let a = Complex::new(x, y);
                    match &diag {
                        Some(p) => q_diagonal(p, a),
                        None => q_value(rho_f, a),
                    }
                })
                .collect()
        })
        .collect();
    let step = axis[1] - axis[0];
    let mass = values.iter().flatten().sum::<f64>() * step * step;
    Ok(QGrid { re_axis: axis.clone(), im_axis: axis, values, time, mass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RingSymmetry {
    pub radii: Vec<f64>,
    pub means: Vec<f64>,
    /// max_theta |Q - mean| / mean per ring.
    pub deviations: Vec<f64>,
    /// Worst deviation over rings whose mean exceeds `relevance` times the largest mean.
    pub max_relative_deviation: f64,
}

/// Samples Q on circles of the given radii.
pub fn ring_symmetry(
    rho_f: &ComplexMatrix<f64>,
    radii: &[f64],
    angles: usize,
    relevance: f64,
) -> Result<RingSymmetry, PhaseSpaceError> {
    if angles < 2 {
        return Err(PhaseSpaceError::Grid("need at least two angles per ring".into()));
    }
    let (means, deviations): (Vec<f64>, Vec<f64>) = radii
        .par_iter()
        .map(|&r| {
            let q: Vec<f64> = (0..angles)
                .map(|k| q_value(rho_f, Complex::from_polar(r, 2.0 * PI * k as f64 / angles as f64)))
                .collect();
            let mean = q.iter().sum::<f64>() / angles as f64;
            let dev = q.iter().fold(0.0f64, |m, &v| m.max((v - mean).abs()));
            (mean, if mean > 0.0 { dev / mean } else { 0.0 })
        })
        .unzip();
    let top = means.iter().fold(0.0f64, |m, &v| m.max(v));
    let max_relative_deviation = means
        .iter()
        .zip(&deviations)
        .filter(|(&m, _)| m >= relevance * top)
        .fold(0.0f64, |acc, (_, &d)| acc.max(d));
    Ok(RingSymmetry { radii: radii.to_vec(), means, deviations, max_relative_deviation })
}

/// Frobenius norm of the off-diagonal part.
pub fn offdiagonal_norm(rho: &ComplexMatrix<f64>) -> f64 {
    let n = rho.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += rho[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Off-diagonal norm of each sample relative to the first. A diagonal first sample gives zeros.
pub fn field_coherence_decay(series: &[ComplexMatrix<f64>]) -> Vec<f64> {
    let Some(first) = series.first() else { return Vec::new() };
    let base = offdiagonal_norm(first);
    series.iter().map(|r| if base > 0.0 { offdiagonal_norm(r) / base } else { 0.0 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_q_is_gaussian() {
        let rho = coherent_density(Complex::new(0.0, 0.0), 10).unwrap();
        let g = husimi_q(&rho, GridSpec { half_width: 4.0, points: 81 }, 0.0).unwrap();
        assert!((g.max() - 1.0 / PI).abs() < 1e-14);
        assert!((g.mass - 1.0).abs() < 1e-3);
        let a = Complex::new(0.7, -0.3);
        assert!((q_value(&rho, a) - (-a.norm_sqr()).exp() / PI).abs() < 1e-15);
    }

    #[test]
    fn coherent_peak_and_moments() {
        let a0 = Complex::new(5f64.sqrt(), 0.0);
        let v = coherent_state(a0, 40).unwrap();
        let mean: f64 = v.iter().enumerate().map(|(n, c)| n as f64 * c.norm_sqr()).sum();
        assert!((mean - 5.0).abs() < 1e-8);
        let rho = ComplexMatrix::outer(&v, &v);
        assert!((q_value(&rho, a0) - 1.0 / PI).abs() < 1e-10);

        let v = coherent_state(Complex::new(0.0, 5.0), 80).unwrap();
        let p: Vec<f64> = v.iter().map(|c| c.norm_sqr()).collect();
        let m1: f64 = p.iter().enumerate().map(|(n, q)| n as f64 * q).sum();
        let m2: f64 = p.iter().enumerate().map(|(n, q)| (n as f64).powi(2) * q).sum();
        assert!((m2 - m1 * m1 - 25.0).abs() < 1e-7);
    }

    #[test]
    fn truncation_is_checked() {
        assert!(matches!(
            coherent_state(Complex::new(3.0, 0.0), 10),
            Err(PhaseSpaceError::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn fock_diagonal_rings_are_flat() {
        let p: Vec<f64> = (0..20).map(|n| (-(n as f64) / 4.0).exp()).collect();
        let z: f64 = p.iter().sum();
        let rho = ComplexMatrix::from_real_diagonal(&p.iter().map(|x| x / z).collect::<Vec<_>>());
        let rs = ring_symmetry(&rho, &[0.5, 1.0, 2.0, 3.0], 64, 0.0).unwrap();
        assert!(rs.max_relative_deviation < 1e-10);
        let coh = coherent_density(Complex::new(1.5, 0.0), 30).unwrap();
        assert!(ring_symmetry(&coh, &[1.5], 64, 0.0).unwrap().max_relative_deviation > 0.5);
    }

    #[test]
    fn coherence_ratio() {
        let coh = coherent_density(Complex::new(1.0, 1.0), 20).unwrap();
        let diag = ComplexMatrix::from_real_diagonal(&(0..20).map(|i| coh[(i, i)].re).collect::<Vec<_>>());
        let r = field_coherence_decay(&[coh.clone(), coh.scale_real(0.5), diag.clone()]);
        assert_eq!(r[0], 1.0);
        assert!((r[1] - 0.5).abs() < 1e-15);
        assert_eq!(r[2], 0.0);
        assert_eq!(field_coherence_decay(&[diag]), vec![0.0]);
    }
}

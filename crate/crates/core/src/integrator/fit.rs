// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::error::ThermoError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares y = slope x + intercept.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit, ThermoError> {
    let n = x.len().min(y.len());
    if n < 2 {
        return Err(ThermoError::TooFewSamples { needed: 2, got: n });
    }
    let nf = n as f64;
    let mx = x[..n].iter().sum::<f64>() / nf;
    let my = y[..n].iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let dx = x[i] - mx;
        let dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 {
        let sse: f64 = (0..n).map(|i| (y[i] - slope * x[i] - intercept).powi(2)).sum();
        1.0 - sse / syy
    } else {
        1.0
    };
    Ok(LinearFit { slope, intercept, r_squared, points: n })
}

/// Slope of the trailing `window` samples; `transient` is set when R^2 < 0.999.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerFit {
    pub fit: LinearFit,
    pub window: usize,
    pub transient: bool,
}

pub fn steady_state_power_fit(times: &[f64], energy: &[f64], window: usize) -> Result<PowerFit, ThermoError> {
    let n = times.len().min(energy.len());
    if window > n || window < 2 {
        return Err(ThermoError::TooFewSamples { needed: window.max(2), got: n });
    }
    let fit = linear_fit(&times[n - window..n], &energy[n - window..n])?;
    Ok(PowerFit { fit, window, transient: fit.r_squared < 0.999 })
}

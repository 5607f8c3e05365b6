// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use crate::semiclassical::params::SemiclassicalParams;
use crate::semiclassical::steady::{constants, Case};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LandscapePoint {
    pub n01: f64,
    pub n02: f64,
    pub case: Case,
    /// |rho_12| = |D|/F
    pub coherence: f64,
}

/// |rho_12| over the (n01, n02) grid, row-major in `n01_values`.
pub fn coherence_landscape(base: &SemiclassicalParams, n01_values: &[f64], n02_values: &[f64]) -> Vec<LandscapePoint> {
    n01_values
        .par_iter()
        .flat_map_iter(|&n01| {
            n02_values.iter().map(move |&n02| {
                let p = SemiclassicalParams { n01, n02, ..*base };
                let k = constants(&p);
                LandscapePoint { n01, n02, case: Case::classify(n01, n02), coherence: k.d.abs() / k.f }
            })
        })
        .collect()
}

// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Excitation-number block representation of the ED-JCM density matrix.
//!
//! K = n + [a == 1] is conserved by the coupling and shifted by at most one
//! unit by the jump operators, so the generator never mixes different
//! coherence orders d = K_row - K_col. Group K holds the three slots
//! |0,K>, |1,K-1>, |2,K>; a slot is absent when its photon number falls
//! outside `0..n_fock`. Order d is stored as the 3x3 blocks (K, K-d) for
//! K = d..=N; order -d is the adjoint and is not stored.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::ModelError;
use crate::error::LinalgError;
use crate::linalg::{eigh, BipartiteDims, ComplexMatrix};
use crate::model::liouvillian::Reservoir;
use crate::model::params::ModelParams;
use crate::scalar::{from_usize, lit, Real};

pub type Block<T> = [Complex<T>; 9];

/// Photon number held by slot `a` of group `k`, if present.
#[inline]
pub fn slot_photon(a: usize, k: usize, n_fock: usize) -> Option<usize> {
    match a {
        1 => (k >= 1 && k - 1 < n_fock).then(|| k - 1),
        _ => (k < n_fock).then_some(k),
    }
}

/// Group of the dense basis state |a, n>.
#[inline]
pub fn group_of(a: usize, n: usize) -> usize {
    n + usize::from(a == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorLayout {
    n_fock: usize,
    orders: Vec<usize>,
    offsets: Vec<usize>,
    len: usize,
}

impl SectorLayout {
    /// `orders` must be strictly increasing and contain 0.
    pub fn new(n_fock: usize, orders: &[usize]) -> Result<Self, ModelError> {
        if n_fock < 2 {
            return Err(ModelError::CutoffTooSmall { min: 2, got: n_fock });
        }
        if orders.first() != Some(&0) || orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::Incompatible(format!("coherence orders must start at 0 and increase: {orders:?}")));
        }
        if let Some(&d) = orders.iter().find(|&&d| d > n_fock) {
            return Err(ModelError::Incompatible(format!("coherence order {d} exceeds cutoff {n_fock}")));
        }
        let mut offsets = Vec::with_capacity(orders.len());
        let mut len = 0;
        for &d in orders {
            offsets.push(len);
            len += 9 * (n_fock + 1 - d);
        }
        Ok(Self { n_fock, orders: orders.to_vec(), offsets, len })
    }

    pub fn diagonal(n_fock: usize) -> Result<Self, ModelError> {
        Self::new(n_fock, &[0])
    }

    pub fn full(n_fock: usize) -> Result<Self, ModelError> {
        Self::new(n_fock, &(0..=n_fock).collect::<Vec<_>>())
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.orders.len() == 1
    }

    pub fn blocks_in(&self, sector: usize) -> usize {
        self.n_fock + 1 - self.orders[sector]
    }

    /// Offset of block K (row group) of sector index `sector`.
    #[inline]
    pub fn block_offset(&self, sector: usize, k: usize) -> usize {
        self.offsets[sector] + 9 * (k - self.orders[sector])
    }

    pub fn sector_of(&self, d: usize) -> Option<usize> {
        self.orders.binary_search(&d).ok()
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims::new(3, self.n_fock)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockState<T> {
    layout: SectorLayout,
    data: Vec<Complex<T>>,
}

impl<T: Real> BlockState<T> {
    pub fn zeros(layout: SectorLayout) -> Self {
        let data = vec![Complex::zero(); layout.len()];
        Self { layout, data }
    }

    pub fn from_parts(layout: SectorLayout, data: Vec<Complex<T>>) -> Result<Self, ModelError> {
        if data.len() != layout.len() {
            return Err(ModelError::Incompatible(format!("expected {} entries, got {}", layout.len(), data.len())));
        }
        Ok(Self { layout, data })
    }

    pub fn layout(&self) -> &SectorLayout {
        &self.layout
    }

    pub fn n_fock(&self) -> usize {
        self.layout.n_fock
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn block(&self, sector: usize, k: usize) -> &[Complex<T>] {
        let o = self.layout.block_offset(sector, k);
        &self.data[o..o + 9]
    }

    fn for_each_slot(layout: &SectorLayout, mut f: impl FnMut(usize, (usize, usize), (usize, usize))) {
        let n = layout.n_fock;
        for (si, &d) in layout.orders.iter().enumerate() {
            for k in d..=n {
                let kc = k - d;
                let base = layout.block_offset(si, k);
                for a in 0..3 {
                    let Some(na) = slot_photon(a, k, n) else { continue };
                    for b in 0..3 {
                        let Some(nb) = slot_photon(b, kc, n) else { continue };
                        f(base + 3 * a + b, (a, na), (b, nb));
                    }
                }
            }
        }
    }

    /// Projects a dense state onto the stored coherence orders.
    ///
    /// With only order 0 this is the phase average over excitation number,
    /// a CPTP map that commutes with the generator.
    pub fn from_dense(rho: &ComplexMatrix<T>, layout: SectorLayout) -> Result<Self, ModelError> {
        let dims = layout.dims();
        if rho.rows() != dims.total() || rho.cols() != dims.total() {
            return Err(ModelError::Incompatible(format!(
                "dense state is {}x{}, layout expects {}",
                rho.rows(),
                rho.cols(),
                dims.total()
            )));
        }
        let mut s = Self::zeros(layout);
        let data = &mut s.data;
        Self::for_each_slot(&s.layout, |idx, (a, na), (b, nb)| {
            data[idx] = rho[(dims.index(a, na), dims.index(b, nb))];
        });
        Ok(s)
    }

    /// rho_m (x) rho_f restricted to the stored orders.
    pub fn product(rho_m: &ComplexMatrix<T>, rho_f: &ComplexMatrix<T>, layout: SectorLayout) -> Result<Self, ModelError> {
        if rho_m.rows() != 3 || rho_f.rows() != layout.n_fock {
            return Err(ModelError::Incompatible(format!(
                "factor sizes {}/{} do not match 3/{}",
                rho_m.rows(),
                rho_f.rows(),
                layout.n_fock
            )));
        }
        let mut s = Self::zeros(layout);
        let data = &mut s.data;
        Self::for_each_slot(&s.layout, |idx, (a, na), (b, nb)| {
            data[idx] = rho_m[(a, b)] * rho_f[(na, nb)];
        });
        Ok(s)
    }

    pub fn to_dense(&self) -> ComplexMatrix<T> {
        let dims = self.layout.dims();
        let mut rho = ComplexMatrix::zeros(dims.total(), dims.total());
        Self::for_each_slot(&self.layout, |idx, (a, na), (b, nb)| {
            let v = self.data[idx];
            let (i, j) = (dims.index(a, na), dims.index(b, nb));
            rho[(i, j)] = v;
            if i != j && group_of(a, na) != group_of(b, nb) {
                rho[(j, i)] = v.conj();
            }
        });
        rho
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for k in 0..=self.layout.n_fock {
            let b = self.block(0, k);
            t += b[0].re + b[4].re + b[8].re;
        }
        t
    }

    /// max |B - B^dagger| over the order-0 blocks.
    pub fn hermiticity_error(&self) -> T {
        let mut e = T::zero();
        for k in 0..=self.layout.n_fock {
            let b = self.block(0, k);
            for a in 0..3 {
                for c in a..3 {
                    e = e.max((b[3 * a + c] - b[3 * c + a].conj()).norm());
                }
            }
        }
        e
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Largest entry magnitude of each stored order.
    pub fn order_norms(&self) -> Vec<(usize, T)> {
        self.layout
            .orders
            .iter()
            .enumerate()
            .map(|(si, &d)| {
                let start = self.layout.offsets[si];
                let end = start + 9 * self.layout.blocks_in(si);
                (d, self.data[start..end].iter().fold(T::zero(), |m, x| m.max(x.norm())))
            })
            .collect()
    }

    /// Population of photon number n.
    pub fn photon_probability(&self, n: usize) -> T {
        if n >= self.layout.n_fock {
            return T::zero();
        }
        let b0 = self.block(0, n);
        let b1 = self.block(0, n + 1);
        b0[0].re + b0[8].re + b1[4].re
    }

    /// Occupancy of the highest retained Fock level.
    pub fn top_fock_occupancy(&self) -> T {
        self.photon_probability(self.layout.n_fock - 1)
    }

    pub fn mean_photon_number(&self) -> T {
        (0..self.layout.n_fock).map(|n| from_usize::<T>(n) * self.photon_probability(n)).sum()
    }

    pub fn reduced_matter(&self) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::zeros(3, 3);
        let n = self.layout.n_fock;
        for k in 0..=n {
            let b = self.block(0, k);
            for a in 0..3 {
                for c in 0..3 {
                    if (a == 1) == (c == 1) {
                        m[(a, c)] += b[3 * a + c];
                    }
                }
            }
        }
        if let Some(s1) = self.layout.sector_of(1) {
            for k in 1..=n {
                let b = self.block(s1, k);
                for c in [0, 2] {
                    m[(1, c)] += b[3 + c];
                }
            }
            for c in [0, 2] {
                m[(c, 1)] = m[(1, c)].conj();
            }
        }
        m
    }

    pub fn reduced_field(&self) -> ComplexMatrix<T> {
        let nf = self.layout.n_fock;
        let mut f = ComplexMatrix::zeros(nf, nf);
        for (si, &d) in self.layout.orders.iter().enumerate() {
            for n in d..nf {
                let b = self.block(si, n);
                let v = b[0] + b[8] + self.block(si, n + 1)[4];
                f[(n, n - d)] = v;
                if d > 0 {
                    f[(n - d, n)] = v.conj();
                }
            }
        }
        f
    }

    /// Eigenvalues of the full state when only order 0 is stored.
    pub fn diagonal_spectrum(&self) -> Result<Vec<T>, LinalgError> {
        let mut values = Vec::with_capacity(3 * (self.layout.n_fock + 1));
        for k in 0..=self.layout.n_fock {
            let m = self.valid_block_matrix(0, k);
            values.extend(crate::linalg::eigvalsh(&m)?);
        }
        Ok(values)
    }

    /// Order-0 block K restricted to its present slots.
    pub fn valid_block_matrix(&self, sector: usize, k: usize) -> ComplexMatrix<T> {
        let slots = present_slots(k, self.layout.n_fock);
        let b = self.block(sector, k);
        ComplexMatrix::from_fn(slots.len(), slots.len(), |i, j| b[3 * slots[i] + slots[j]])
    }

    /// Same state on a larger cutoff; new levels start empty.
    pub fn extend(&self, n_fock: usize) -> Result<Self, ModelError> {
        if n_fock < self.layout.n_fock {
            return Err(ModelError::Incompatible(format!("cannot shrink cutoff {} to {n_fock}", self.layout.n_fock)));
        }
        let layout = SectorLayout::new(n_fock, &self.layout.orders)?;
        let mut out = Self::zeros(layout);
        for si in 0..self.layout.orders.len() {
            let src = self.layout.offsets[si];
            let len = 9 * self.layout.blocks_in(si);
            let dst = out.layout.offsets[si];
            out.data[dst..dst + len].copy_from_slice(&self.data[src..src + len]);
        }
        Ok(out)
    }

    /// Drops every order d > 0 whose entries are all below `threshold`.
    pub fn prune(&self, threshold: T) -> Result<Self, ModelError> {
        let keep: Vec<usize> = self
            .order_norms()
            .into_iter()
            .filter(|&(d, norm)| d == 0 || norm >= threshold)
            .map(|(d, _)| d)
            .collect();
        self.restrict(&keep)
    }

    /// Keeps the listed orders (must be a subset of the stored ones).
    pub fn restrict(&self, orders: &[usize]) -> Result<Self, ModelError> {
        let layout = SectorLayout::new(self.layout.n_fock, orders)?;
        let mut out = Self::zeros(layout);
        for (si_new, &d) in orders.iter().enumerate() {
            let si = self
                .layout
                .sector_of(d)
                .ok_or_else(|| ModelError::Incompatible(format!("order {d} is not stored")))?;
            let len = 9 * self.layout.blocks_in(si);
            let src = self.layout.offsets[si];
            let dst = out.layout.offsets[si_new];
            out.data[dst..dst + len].copy_from_slice(&self.data[src..src + len]);
        }
        Ok(out)
    }
}

/// Slots of group K that correspond to basis states inside the cutoff.
pub fn present_slots(k: usize, n_fock: usize) -> Vec<usize> {
    (0..3).filter(|&a| slot_photon(a, k, n_fock).is_some()).collect()
}

/// Generator of the interaction-picture ED-JCM master equation in block form.
#[derive(Clone, Debug)]
pub struct BlockGenerator<T> {
    layout: SectorLayout,
    /// lambda sqrt(K), zero when the (|1,K-1>, |2,K>) pair is truncated.
    coupling: Vec<T>,
    /// Anticommutator coefficients per level, hot and cold.
    g_hot: [T; 3],
    g_cold: [T; 3],
    g: [T; 3],
    hot_down: T,
    hot_up: T,
    cold_down: T,
    cold_up: T,
}

impl<T: Real> BlockGenerator<T> {
    pub fn new(p: &ModelParams, layout: &SectorLayout) -> Self {
        let n = layout.n_fock;
        let lam: T = lit(p.lambda);
        let coupling = (0..=n)
            .map(|k| if k >= 1 && k < n { lam * from_usize::<T>(k).sqrt() } else { T::zero() })
            .collect();
        let (g1, g2, n1, n2) = (p.gamma01, p.gamma02, p.n01, p.n02);
        let g_hot = [lit(g1 * n1), lit(g1 * (n1 + 1.0)), T::zero()];
        let g_cold = [lit(g2 * n2), T::zero(), lit(g2 * (n2 + 1.0))];
        let g = [g_hot[0] + g_cold[0], g_hot[1], g_cold[2]];
        Self {
            layout: layout.clone(),
            coupling,
            g_hot,
            g_cold,
            g,
            hot_down: lit(2.0 * g1 * (n1 + 1.0)),
            hot_up: lit(2.0 * g1 * n1),
            cold_down: lit(2.0 * g2 * (n2 + 1.0)),
            cold_up: lit(2.0 * g2 * n2),
        }
    }

    pub fn layout(&self) -> &SectorLayout {
        &self.layout
    }

    pub fn coupling(&self, k: usize) -> T {
        self.coupling[k]
    }

    /// dy = L[y] on the flat block storage.
    pub fn apply(&self, y: &[Complex<T>], dy: &mut [Complex<T>]) {
        debug_assert_eq!(y.len(), self.layout.len());
        let n = self.layout.n_fock;
        let g = self.g;
        for (si, &d) in self.layout.orders.iter().enumerate() {
            let base = self.layout.offsets[si];
            let nb = n + 1 - d;
            for b in 0..nb {
                let k = b + d;
                let kc = b;
                let o = base + 9 * b;
                let r = &y[o..o + 9];
                let s = self.coupling[k];
                let sc = self.coupling[kc];
                let mut out = [Complex::<T>::zero(); 9];
                for a in 0..3 {
                    for c in 0..3 {
                        let vr = match a {
                            1 => r[6 + c] * s,
                            2 => r[3 + c] * s,
                            _ => Complex::zero(),
                        };
                        let rv = match c {
                            1 => r[3 * a + 2] * sc,
                            2 => r[3 * a + 1] * sc,
                            _ => Complex::zero(),
                        };
                        let comm = vr - rv;
                        let x = r[3 * a + c];
                        out[3 * a + c] = Complex::new(comm.im, -comm.re) - x * (g[a] + g[c]);
                    }
                }
                out[0] += r[8] * self.cold_down;
                if b + 1 < nb {
                    out[0] += y[o + 9 + 4] * self.hot_down;
                }
                if b >= 1 {
                    out[4] += y[o - 9] * self.hot_up;
                }
                out[8] += r[0] * self.cold_up;
                dy[o..o + 9].copy_from_slice(&out);
            }
        }
    }

    pub fn derivative(&self, state: &BlockState<T>) -> BlockState<T> {
        assert_eq!(state.layout, self.layout, "layout mismatch");
        let mut out = BlockState::zeros(self.layout.clone());
        self.apply(&state.data, &mut out.data);
        out
    }

    /// One reservoir's dissipator on the order-0 block K.
    pub fn dissipator_block(&self, state: &BlockState<T>, k: usize, reservoir: Reservoir) -> Block<T> {
        let n = self.layout.n_fock;
        let r = state.block(0, k);
        let (g, down, up) = match reservoir {
            Reservoir::Hot => (self.g_hot, self.hot_down, self.hot_up),
            Reservoir::Cold => (self.g_cold, self.cold_down, self.cold_up),
        };
        let mut out = [Complex::<T>::zero(); 9];
        for a in 0..3 {
            for c in 0..3 {
                out[3 * a + c] = -(r[3 * a + c] * (g[a] + g[c]));
            }
        }
        match reservoir {
            Reservoir::Hot => {
                if k < n {
                    out[0] += state.block(0, k + 1)[4] * down;
                }
                if k >= 1 {
                    out[4] += state.block(0, k - 1)[0] * up;
                }
            }
            Reservoir::Cold => {
                out[0] += r[8] * down;
                out[8] += r[0] * up;
            }
        }
        out
    }
}

/// Blockwise entropy rate -Tr(rho_dot ln rho) for an order-0-only state.
pub fn diagonal_entropy_rate<T: Real>(state: &BlockState<T>, rate: &BlockState<T>, log_floor: T) -> Result<T, LinalgError> {
    let n = state.n_fock();
    let mut total = T::zero();
    for k in 0..=n {
        let m = state.valid_block_matrix(0, k);
        let md = rate.valid_block_matrix(0, k);
        let e = eigh(&m)?;
        total += crate::linalg::entropy::entropy_rate_with(&e.values, &e.vectors, &md, log_floor)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::liouvillian::edjcm_lindblad;
    use crate::model::operators::OperatorSet;
    use proptest::prelude::*;

    fn random_state(n_fock: usize, seed: &[f64]) -> ComplexMatrix<f64> {
        let dim = 3 * n_fock;
        let mut it = seed.iter().cycle();
        let x = ComplexMatrix::from_fn(dim, dim, |_, _| Complex::new(*it.next().unwrap(), *it.next().unwrap()));
        let rho = x.matmul(&x.dagger());
        let tr = rho.trace().re;
        rho.scale_real(1.0 / tr)
    }

    #[test]
    fn dense_round_trip() {
        let n = 4;
        let rho = random_state(n, &[0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.05]);
        let s = BlockState::from_dense(&rho, SectorLayout::full(n).unwrap()).unwrap();
        assert!((&s.to_dense() - &rho).max_abs() < 1e-15);
        assert!((s.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reduced_states_match_dense() {
        let n = 5;
        let rho = random_state(n, &[0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.05, 0.9]);
        let s = BlockState::from_dense(&rho, SectorLayout::full(n).unwrap()).unwrap();
        let dims = BipartiteDims::new(3, n);
        let rm = dims.partial_trace(&rho, crate::linalg::Subsystem::Matter).unwrap();
        let rf = dims.partial_trace(&rho, crate::linalg::Subsystem::Field).unwrap();
        assert!((&s.reduced_matter() - &rm).max_abs() < 1e-15);
        assert!((&s.reduced_field() - &rf).max_abs() < 1e-15);
        assert!((s.top_fock_occupancy() - rf[(n - 1, n - 1)].re).abs() < 1e-15);
    }

    #[test]
    fn generator_matches_dense_liouvillian() {
        for n in [2usize, 3, 6] {
            let p = ModelParams::reference().with_n_fock(n);
            let rho = random_state(n, &[0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.05, 0.9, -0.6]);
            let ops = OperatorSet::<f64>::build(&p);
            let dense = edjcm_lindblad(&p, &ops).apply(&rho).unwrap();
            let layout = SectorLayout::full(n).unwrap();
            let s = BlockState::from_dense(&rho, layout.clone()).unwrap();
            let gen = BlockGenerator::new(&p, &layout);
            let d = gen.derivative(&s).to_dense();
            assert!((&d - &dense).max_abs() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn reservoir_blocks_match_dense() {
        let n = 4;
        let p = ModelParams::reference().with_n_fock(n);
        let rho = random_state(n, &[0.2, 0.1, -0.3, 0.6, 0.4]);
        let layout = SectorLayout::diagonal(n).unwrap();
        let s = BlockState::from_dense(&rho, layout.clone()).unwrap();
        let projected = s.to_dense();
        let ops = OperatorSet::<f64>::build(&p);
        let l = edjcm_lindblad(&p, &ops);
        let gen = BlockGenerator::new(&p, &layout);
        for res in [Reservoir::Hot, Reservoir::Cold] {
            let dense = l.dissipator(&projected, Some(res)).unwrap();
            let mut blocks = BlockState::zeros(layout.clone());
            for k in 0..=n {
                let b = gen.dissipator_block(&s, k, res);
                let o = layout.block_offset(0, k);
                for (i, v) in b.iter().enumerate() {
                    // zero the absent slots, as the dense map never sees them
                    let (a, c) = (i / 3, i % 3);
                    if slot_photon(a, k, n).is_some() && slot_photon(c, k, n).is_some() {
                        blocks.as_mut_slice()[o + i] = *v;
                    }
                }
            }
            assert!((&blocks.to_dense() - &dense).max_abs() < 1e-17);
        }
    }

    #[test]
    fn extend_and_prune() {
        let n = 3;
        let rho = random_state(n, &[0.3, -0.2, 0.5, 0.1]);
        let s = BlockState::from_dense(&rho, SectorLayout::full(n).unwrap()).unwrap();
        let e = s.extend(6).unwrap();
        let de = e.to_dense();
        let dims_small = BipartiteDims::new(3, n);
        let dims_big = BipartiteDims::new(3, 6);
        for a in 0..3 {
            for na in 0..n {
                for b in 0..3 {
                    for nb in 0..n {
                        assert_eq!(de[(dims_big.index(a, na), dims_big.index(b, nb))], rho[(dims_small.index(a, na), dims_small.index(b, nb))]);
                    }
                }
            }
        }
        let p = s.prune(10.0).unwrap();
        assert!(p.layout().is_diagonal());
        assert!((p.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_spectrum_matches_dense() {
        let n = 4;
        let rho = random_state(n, &[0.3, -0.2, 0.5, 0.1, 0.8]);
        let s = BlockState::from_dense(&rho, SectorLayout::diagonal(n).unwrap()).unwrap();
        let mut a = s.diagonal_spectrum().unwrap();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let b = crate::linalg::eigvalsh(&s.to_dense()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn generator_is_traceless_and_hermitian(seed in proptest::collection::vec(-1.0f64..1.0, 40), n in 2usize..7) {
            let p = ModelParams::reference().with_n_fock(n);
            let rho = random_state(n, &seed);
            let layout = SectorLayout::full(n).unwrap();
            let s = BlockState::from_dense(&rho, layout.clone()).unwrap();
            let d = BlockGenerator::new(&p, &layout).derivative(&s);
            let scale = d.max_abs().max(1e-300);
            prop_assert!(d.trace().abs() <= 1e-12 * scale);
            prop_assert!(d.hermiticity_error() <= 1e-12 * scale);
            let dd = d.to_dense();
            prop_assert!(dd.hermiticity_error() <= 1e-12 * scale);
        }
    }
}

//! Cached 3D FFT plans over the lattice, backed by `rustfft`.
//!
//! Real fields are transformed two at a time by packing them into the real
//! and imaginary parts of one complex array.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;
use super::lattice::Retained;

pub(crate) struct Fft3 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Fft3>>>> = OnceLock::new();

pub(crate) fn plan(grid: Grid) -> Arc<Fft3> {
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut plans = plans.lock().unwrap_or_else(|e| e.into_inner());
    plans
        .entry(grid.n())
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Fft3 {
                n: grid.n(),
                forward: planner.plan_fft_forward(grid.n()),
                inverse: planner.plan_fft_inverse(grid.n()),
            })
        })
        .clone()
}

/// Calls `f(idx, index of −k)` over the lattice.
fn for_each_negated(grid: Grid, mut f: impl FnMut(usize, usize)) {
    let n = grid.n();
    let neg: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let mut idx = 0;
    for &a in &neg {
        for &b in &neg {
            let row = (a * n + b) * n;
            for &c in &neg {
                f(idx, row + c);
                idx += 1;
            }
        }
    }
}

fn transpose_square(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    transpose::transpose(src, dst, n, n);
}

/// Signed-wavenumber magnitude along one axis.
fn axis_k(i: usize, n: usize) -> usize {
    if i < n / 2 {
        i
    } else {
        n - i
    }
}

impl Fft3 {
    /// Transforms the contiguous axis-3 lines `(i1, i2)` for which `keep` holds.
    fn pass3(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>, keep: impl Fn(usize, usize) -> bool) {
        let n = self.n;
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        for (line_no, line) in data.chunks_mut(n).enumerate() {
            if keep(line_no / n, line_no % n) {
                fft.process_with_scratch(line, &mut scratch);
            }
        }
    }

    /// Transforms along axis 2 inside the planes `i1` for which `keep` holds.
    fn pass2(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>, keep: impl Fn(usize) -> bool) {
        let n = self.n;
        let plane = n * n;
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut turned = vec![Complex64::default(); plane];
        for (i1, p_data) in data.chunks_mut(plane).enumerate() {
            if keep(i1) {
                transpose_square(p_data, &mut turned, n);
                fft.process_with_scratch(&mut turned, &mut scratch);
                transpose_square(&turned, p_data, n);
            }
        }
    }

    /// Transforms along axis 1; for fixed `i2` the rows `i1` (stride `n²`) form an `n × n` tile.
    fn pass1(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        let plane = n * n;
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut tile = vec![Complex64::default(); plane];
        let mut turned = vec![Complex64::default(); plane];
        for i2 in 0..n {
            for i1 in 0..n {
                let src = i1 * plane + i2 * n;
                tile[i1 * n..(i1 + 1) * n].copy_from_slice(&data[src..src + n]);
            }
            transpose_square(&tile, &mut turned, n);
            fft.process_with_scratch(&mut turned, &mut scratch);
            transpose_square(&turned, &mut tile, n);
            for i1 in 0..n {
                let dst = i1 * plane + i2 * n;
                data[dst..dst + n].copy_from_slice(&tile[i1 * n..(i1 + 1) * n]);
            }
        }
    }

    /// Unnormalized in-place 3D transform.
    fn process(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        debug_assert_eq!(data.len(), self.n * self.n * self.n);
        self.pass3(data, fft, |_, _| true);
        self.pass2(data, fft, |_| true);
        self.pass1(data, fft);
    }

    /// Inverse transform of a spectrum supported in `|k| ≤ km`: lines that are
    /// identically zero are skipped.
    fn inverse_band(&self, data: &mut [Complex64], km: usize) {
        let n = self.n;
        self.pass3(data, &self.inverse, |i1, i2| {
            let (a, b) = (axis_k(i1, n), axis_k(i2, n));
            a * a + b * b <= km * km
        });
        self.pass2(data, &self.inverse, |i1| axis_k(i1, n) <= km);
        self.pass1(data, &self.inverse);
    }

    /// Forward transform that is exact only on `|k| ≤ km`; lines feeding
    /// nothing but discarded modes are skipped.
    fn forward_band(&self, data: &mut [Complex64], km: usize) {
        let n = self.n;
        self.pass1(data, &self.forward);
        self.pass2(data, &self.forward, |i1| axis_k(i1, n) <= km);
        self.pass3(data, &self.forward, |i1, i2| {
            let (a, b) = (axis_k(i1, n), axis_k(i2, n));
            a * a + b * b <= km * km
        });
    }

    /// [`Self::inverse_pair`] for spectra supported in the dealiased ball.
    pub(crate) fn inverse_pair_band(&self, grid: Grid, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let i = Complex64::i();
        let mut z: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x + i * y).collect();
        self.inverse_band(&mut z, grid.k_max());
        (z.iter().map(|v| v.re).collect(), z.iter().map(|v| v.im).collect())
    }

    /// [`Self::forward_pair`] restricted to the retained modes; all other coefficients are zero.
    pub(crate) fn forward_pair_band(
        &self,
        grid: Grid,
        modes: &Retained,
        x: &[f64],
        y: &[f64],
    ) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut z: Vec<Complex64> = x.iter().zip(y).map(|(&a, &b)| Complex64::new(a, b)).collect();
        self.forward_band(&mut z, grid.k_max());
        let scale = 0.5 / grid.len() as f64;
        let mut fa = vec![Complex64::default(); z.len()];
        let mut fb = vec![Complex64::default(); z.len()];
        for &idx in &modes.idx {
            let zk = z[idx];
            let zm = z[grid.negated_index(idx)].conj();
            fa[idx] = (zk + zm) * scale;
            let d = (zk - zm) * scale;
            fb[idx] = Complex64::new(d.im, -d.re);
        }
        (fa, fb)
    }

    pub(crate) fn forward_single_band(&self, grid: Grid, modes: &Retained, x: &[f64]) -> Vec<Complex64> {
        let mut z: Vec<Complex64> = x.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        self.forward_band(&mut z, grid.k_max());
        let scale = 0.5 / grid.len() as f64;
        let mut out = vec![Complex64::default(); z.len()];
        for &idx in &modes.idx {
            out[idx] = (z[idx] + z[grid.negated_index(idx)].conj()) * scale;
        }
        out
    }

    /// Physical values from two Hermitian spectra at once.
    pub(crate) fn inverse_pair(&self, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let i = Complex64::i();
        let mut z: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x + i * y).collect();
        self.process(&mut z, &self.inverse);
        (z.iter().map(|v| v.re).collect(), z.iter().map(|v| v.im).collect())
    }

    pub(crate) fn inverse_single(&self, a: &[Complex64]) -> Vec<f64> {
        let mut z = a.to_vec();
        self.process(&mut z, &self.inverse);
        z.iter().map(|v| v.re).collect()
    }

    /// Spectra (normalized by `1/N^3`) of two real fields at once; the outputs
    /// are Hermitian to the last bit.
    pub(crate) fn forward_pair(&self, grid: Grid, x: &[f64], y: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut z: Vec<Complex64> = x.iter().zip(y).map(|(&a, &b)| Complex64::new(a, b)).collect();
        self.process(&mut z, &self.forward);
        let scale = 1.0 / grid.len() as f64;
        let mut fa = vec![Complex64::default(); z.len()];
        let mut fb = vec![Complex64::default(); z.len()];
        for_each_negated(grid, |idx, neg| {
            let zk = z[idx];
            let zm = z[neg].conj();
            fa[idx] = (zk + zm) * (0.5 * scale);
            let d = (zk - zm) * (0.5 * scale);
            // (zk - zm) / (2i)
            fb[idx] = Complex64::new(d.im, -d.re);
        });
        (fa, fb)
    }

    pub(crate) fn forward_single(&self, grid: Grid, x: &[f64]) -> Vec<Complex64> {
        let mut z: Vec<Complex64> = x.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        self.process(&mut z, &self.forward);
        let scale = 1.0 / grid.len() as f64;
        let mut out = vec![Complex64::default(); z.len()];
        for_each_negated(grid, |idx, neg| out[idx] = (z[idx] + z[neg].conj()) * (0.5 * scale));
        out
    }
}

//! Littlewood-Paley filter bank on the integer wavenumber lattice.
//!
//! The cutoff is `χ(r) = ψ(2r − 1)` with the exponential smoothstep
//! `ψ(t) = h(1−t) / (h(t) + h(1−t))`, `h(t) = e^{−1/t}` for `t > 0`.
//! Shell `q ≥ 0` has symbol `φ_q(k) = χ(2^{−q−1}|k|) − χ(2^{−q}|k|)` and
//! shell `−1` has symbol `χ(|k|)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::{inverse_transform, Grid, SpectralField, VOLUME};

fn h(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Exponential smoothstep: 1 for `t ≤ 0`, 0 for `t ≥ 1`.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let (a, b) = (h(1.0 - t), h(t));
        a / (a + b)
    }
}

/// Radial low-pass cutoff: 1 on `r ≤ 1/2`, 0 on `r ≥ 1`.
pub fn chi(r: f64) -> f64 {
    smoothstep(2.0 * r - 1.0)
}

/// `1 − χ(r)`, evaluated without cancellation.
pub fn chi_complement(r: f64) -> f64 {
    let t = 2.0 * r - 1.0;
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let (a, b) = (h(1.0 - t), h(t));
        b / (a + b)
    }
}

/// Shell symbol as a function of `|k|`.
///
/// At most one of `χ(r/2^{q+1})` and `χ(r/2^q)` lies strictly between 0 and 1,
/// so the difference reduces to a single cutoff evaluation.
pub fn phi(q: i32, r: f64) -> f64 {
    if q < 0 {
        return chi(r);
    }
    let a = r / 2f64.powi(q + 1);
    if a <= 0.5 {
        chi_complement(2.0 * a)
    } else {
        chi(a)
    }
}

/// `λ_q = 2^q`, with `λ_{−1} := 1` for weighted sums and sups.
pub fn lambda(q: i32) -> f64 {
    if q < 0 {
        1.0
    } else {
        2f64.powi(q)
    }
}

/// Precomputed filter symbols for one grid.
///
/// Symbols are radial, so they are tabulated against `|k|²` and looked up
/// through a per-lattice-point `|k|²` table.
#[derive(Debug, Clone)]
pub struct FilterBank {
    grid: Grid,
    q_max: i32,
    k2: Vec<u32>,
    chi_table: Vec<f64>,
    /// `phi_table[q][|k|²]` for `q = 0..=q_max`.
    phi_table: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct ShellDecomposition {
    pub shells: Vec<(i32, SpectralField)>,
}

impl ShellDecomposition {
    pub fn sum(&self) -> Option<SpectralField> {
        let mut it = self.shells.iter().map(|(_, f)| f);
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.add(f)))
    }
}

/// Per-shell norms of a field, indexed by `q + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellNorms {
    pub linf: Vec<f64>,
    pub l2: Vec<f64>,
}

pub fn build_filter_bank(grid: Grid) -> FilterBank {
    FilterBank::new(grid)
}

impl FilterBank {
    pub fn new(grid: Grid) -> Self {
        let q_max = (grid.k_max() as f64).log2().ceil() as i32;
        let k2 = grid.k_squared_table();
        let m_max = k2.iter().copied().max().unwrap_or(0) as usize;
        let radius = |m: usize| (m as f64).sqrt();
        let chi_table = (0..=m_max).map(|m| chi(radius(m))).collect();
        let phi_table = (0..=q_max)
            .map(|q| (0..=m_max).map(|m| phi(q, radius(m))).collect())
            .collect();
        Self { grid, q_max, k2, chi_table, phi_table }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn q_max(&self) -> i32 {
        self.q_max
    }

    /// Shell indices `−1..=q_max`.
    pub fn shells(&self) -> impl Iterator<Item = i32> {
        -1..=self.q_max
    }

    pub fn shell_count(&self) -> usize {
        (self.q_max + 2) as usize
    }

    pub fn lambda(&self, q: i32) -> f64 {
        lambda(q)
    }

    pub fn k_squared(&self, idx: usize) -> u32 {
        self.k2[idx]
    }

    pub fn chi_at(&self, idx: usize) -> f64 {
        self.chi_table[self.k2[idx] as usize]
    }

    /// `φ_q` (or `χ` for `q = −1`) at lattice index `idx`.
    pub fn symbol(&self, q: i32, idx: usize) -> f64 {
        if q < 0 {
            self.chi_at(idx)
        } else {
            self.phi_table[q as usize][self.k2[idx] as usize]
        }
    }

    fn check_shell(&self, q: i32) -> Result<()> {
        if q < -1 || q > self.q_max {
            return Err(Error::ShellIndex { q, q_max: self.q_max });
        }
        Ok(())
    }

    fn check_grid(&self, u: &SpectralField) {
        assert_eq!(u.grid(), self.grid, "field and filter bank grids differ");
    }

    fn multiply(&self, u: &SpectralField, w: impl Fn(usize) -> f64) -> SpectralField {
        self.check_grid(u);
        let coeffs = std::array::from_fn(|c| {
            u.component(c).iter().enumerate().map(|(idx, v)| v * w(idx)).collect()
        });
        SpectralField::from_coeffs(self.grid, coeffs, u.is_divergence_free()).expect("same grid")
    }

    /// `û_q = φ_q û` (or `χ û` for `q = −1`).
    pub fn shell_project(&self, u: &SpectralField, q: i32) -> Result<SpectralField> {
        self.check_shell(q)?;
        Ok(self.multiply(u, |idx| self.symbol(q, idx)))
    }

    /// `u_{≤Q}`, multiplier `χ(2^{−Q−1}|k|)`.
    pub fn low_pass(&self, u: &SpectralField, big_q: i32) -> Result<SpectralField> {
        self.check_shell(big_q)?;
        let scale = 2f64.powi(big_q + 1);
        let table: Vec<f64> =
            (0..self.chi_table.len()).map(|m| chi((m as f64).sqrt() / scale)).collect();
        Ok(self.multiply(u, |idx| table[self.k2[idx] as usize]))
    }

    /// `u_{≥Q}`, multiplier `1 − χ(2^{−Q}|k|)` (identity for `Q = −1`).
    pub fn high_pass(&self, u: &SpectralField, big_q: i32) -> Result<SpectralField> {
        self.check_shell(big_q)?;
        if big_q < 0 {
            return Ok(u.clone());
        }
        let scale = 2f64.powi(big_q);
        let table: Vec<f64> =
            (0..self.chi_table.len()).map(|m| 1.0 - chi((m as f64).sqrt() / scale)).collect();
        Ok(self.multiply(u, |idx| table[self.k2[idx] as usize]))
    }

    pub fn decompose(&self, u: &SpectralField) -> ShellDecomposition {
        ShellDecomposition {
            shells: self.shells().map(|q| (q, self.shell_project(u, q).expect("in range"))).collect(),
        }
    }

    /// Lattice `‖u_q‖_∞` and `‖u_q‖₂` for every shell.
    pub fn shell_norms(&self, u: &SpectralField) -> ShellNorms {
        let mut linf = Vec::with_capacity(self.shell_count());
        let mut l2 = Vec::with_capacity(self.shell_count());
        for q in self.shells() {
            let uq = self.shell_project(u, q).expect("in range");
            l2.push(uq.l2_norm());
            linf.push(if uq.is_zero() { 0.0 } else { inverse_transform(&uq).max_magnitude() });
        }
        ShellNorms { linf, l2 }
    }

    /// Fraction of `‖u‖₂²` carried by the top shell.
    pub fn top_shell_fraction(&self, u: &SpectralField) -> f64 {
        let total = u.l2_norm_sq();
        if total == 0.0 {
            return 0.0;
        }
        self.shell_project(u, self.q_max).expect("in range").l2_norm_sq() / total
    }

    /// Largest `|χ(|k|) + Σ_{q≤Q} φ_q(k) − χ(2^{−Q−1}|k|)|` over the lattice and all `Q`.
    pub fn telescoping_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..self.chi_table.len() {
            let r = (m as f64).sqrt();
            let mut acc = self.chi_table[m];
            for q in 0..=self.q_max {
                acc += self.phi_table[q as usize][m];
                worst = worst.max((acc - chi(r / 2f64.powi(q + 1))).abs());
            }
        }
        worst
    }

    /// Number of retained lattice modes on which `φ_q > 0`.
    pub fn support_size(&self, q: i32) -> usize {
        let km2 = (self.grid.k_max() * self.grid.k_max()) as u32;
        (0..self.grid.len())
            .filter(|&idx| self.k2[idx] <= km2 && self.symbol(q, idx) > 0.0)
            .count()
    }
}

/// `‖u_q‖_∞ / (λ_q^{3/2} ‖u_q‖₂ / (2π)^{3/2})`.
pub fn bernstein_ratio(uq: &SpectralField, q: i32) -> f64 {
    let l2 = uq.l2_norm();
    if l2 == 0.0 {
        return 0.0;
    }
    let linf = inverse_transform(uq).max_magnitude();
    linf / (lambda(q).powf(1.5) * l2 / VOLUME.sqrt())
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return v.map(|x| x / n);
        }
    }
}

/// Divergence-free field with `û(k) = P_k e · e^{−ik·x₀}` on the support of
/// shell `q`: the extremal case of Bernstein's inequality, peaked at `x₀`.
pub fn saturating_shell_field(bank: &FilterBank, q: i32, center: [usize; 3], polarization: [f64; 3]) -> SpectralField {
    let grid = bank.grid();
    let km2 = (grid.k_max() * grid.k_max()) as u32;
    let h = grid.spacing();
    let x0 = center.map(|j| j as f64 * h);
    let mut coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); grid.len()]);
    for idx in 0..grid.len() {
        let m = bank.k_squared(idx);
        if m > km2 || bank.symbol(q, idx) <= 0.0 {
            continue;
        }
        let k = grid.mode(idx).map(|v| v as f64);
        let (k2, dot) = (m as f64, k[0] * polarization[0] + k[1] * polarization[1] + k[2] * polarization[2]);
        let phase = Complex64::from_polar(1.0, -(k[0] * x0[0] + k[1] * x0[1] + k[2] * x0[2]));
        for c in 0..3 {
            let p = if k2 > 0.0 { polarization[c] - k[c] * dot / k2 } else { polarization[c] };
            coeffs[c][idx] = phase * p;
        }
    }
    SpectralField::from_coeffs(grid, coeffs, q >= 0).expect("same grid")
}

/// Random-phase divergence-free field supported in shell `q`.
pub fn random_shell_field(bank: &FilterBank, q: i32, seed: u64) -> Result<SpectralField> {
    let grid = bank.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); grid.len()]);
    for c in coeffs.iter_mut() {
        for v in c.iter_mut() {
            *v = Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
        }
    }
    // symmetrize so the field is real
    let raw = SpectralField::from_coeffs(grid, coeffs.clone(), false)?;
    for c in 0..3 {
        for idx in 0..grid.len() {
            let neg = grid.negated_index(idx);
            coeffs[c][idx] = (raw.component(c)[idx] + raw.component(c)[neg].conj()) * 0.5;
        }
    }
    let field = SpectralField::from_coeffs(grid, coeffs, false)?.dealiased();
    bank.shell_project(&crate::spectral::leray_project(&field), q)
}

/// Measured Bernstein constant `C_B`: the largest ratio `bernstein_ratio`
/// over saturating and random-phase single-shell fields, one family member
/// per seed and shell, with random centers and polarizations.
pub fn measure_bernstein_constant(bank: &FilterBank, seeds: &[u64]) -> f64 {
    let grid = bank.grid();
    let mut best: f64 = 0.0;
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for q in 0..=bank.q_max() {
            let center = std::array::from_fn(|_| rng.random_range(0..grid.n()));
            let e = unit_vector(&mut rng);
            best = best.max(bernstein_ratio(&saturating_shell_field(bank, q, center, e), q));
            if let Ok(uq) = random_shell_field(bank, q, seed.wrapping_mul(31).wrapping_add(q as u64)) {
                best = best.max(bernstein_ratio(&uq, q));
            }
        }
    }
    best
}

use num_complex::Complex64;

use super::fft;
use super::grid::{Grid, PERIOD};
use crate::error::{Error, Result};

/// `(2π)^3`, the torus volume; Parseval factor for the `1/N^3` forward normalization.
pub const VOLUME: f64 = PERIOD * PERIOD * PERIOD;

/// Fourier coefficients of a real 3-component periodic vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: [Vec<Complex64>; 3],
    divergence_free: bool,
}

/// Samples of a real 3-component vector field on the uniform lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    grid: Grid,
    values: [Vec<f64>; 3],
}

impl PhysicalField {
    pub fn new(grid: Grid, values: [Vec<f64>; 3]) -> Result<Self> {
        if values.iter().any(|v| v.len() != grid.len()) {
            return Err(Error::Parameter("component length does not match grid".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: std::array::from_fn(|_| vec![0.0; grid.len()]) }
    }

    /// Samples `f(x)` at every lattice point.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let n = grid.n();
        let mut values: [Vec<f64>; 3] = std::array::from_fn(|_| Vec::with_capacity(grid.len()));
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let v = f([grid.coordinate(i), grid.coordinate(j), grid.coordinate(l)]);
                    for c in 0..3 {
                        values[c].push(v[c]);
                    }
                }
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.values[c]
    }

    pub fn values(&self) -> &[Vec<f64>; 3] {
        &self.values
    }

    /// Pointwise Euclidean magnitude at lattice index `idx`.
    #[inline]
    pub fn magnitude(&self, idx: usize) -> f64 {
        let [a, b, c] = [self.values[0][idx], self.values[1][idx], self.values[2][idx]];
        (a * a + b * b + c * c).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_finite()))
    }

    pub fn max_magnitude(&self) -> f64 {
        (0..self.grid.len()).map(|i| self.magnitude(i)).fold(0.0, f64::max)
    }
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: std::array::from_fn(|_| vec![Complex64::default(); grid.len()]),
            divergence_free: true,
        }
    }

    pub fn from_coeffs(grid: Grid, coeffs: [Vec<Complex64>; 3], divergence_free: bool) -> Result<Self> {
        if coeffs.iter().any(|v| v.len() != grid.len()) {
            return Err(Error::Parameter("coefficient length does not match grid".into()));
        }
        Ok(Self { grid, coeffs, divergence_free })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Vec<Complex64>; 3] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Vec<Complex64>; 3] {
        &mut self.coeffs
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.coeffs[c]
    }

    pub fn is_divergence_free(&self) -> bool {
        self.divergence_free
    }

    pub(crate) fn with_divergence_free(mut self, flag: bool) -> Self {
        self.divergence_free = flag;
        self
    }

    pub fn mode(&self, k: [i64; 3]) -> [Complex64; 3] {
        let idx = self.grid.index_of(k);
        std::array::from_fn(|c| self.coeffs[c][idx])
    }

    /// Sets the amplitude at `k` and its conjugate at `-k`.
    pub fn set_mode(&mut self, k: [i64; 3], value: [Complex64; 3]) {
        let idx = self.grid.index_of(k);
        let neg = self.grid.negated_index(idx);
        for c in 0..3 {
            self.coeffs[c][idx] = value[c];
            self.coeffs[c][neg] = value[c].conj();
        }
        if neg == idx {
            for c in 0..3 {
                self.coeffs[c][idx].im = 0.0;
            }
        }
        self.divergence_free = false;
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: std::array::from_fn(|c| self.coeffs[c].iter().map(|v| v * alpha).collect()),
            divergence_free: self.divergence_free,
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        Self {
            grid: self.grid,
            coeffs: std::array::from_fn(|c| {
                self.coeffs[c].iter().zip(&other.coeffs[c]).map(|(a, b)| op(*a, *b)).collect()
            }),
            divergence_free: self.divergence_free && other.divergence_free,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Multiplies every mode by the real radial symbol `f(|k|^2)`.
    pub fn radial_multiplier(&self, f: impl Fn(f64) -> f64) -> Self {
        let k2 = self.grid.k_squared_table();
        let mut cache = vec![f64::NAN; k2.iter().copied().max().unwrap_or(0) as usize + 1];
        let mut out = self.clone();
        for (idx, &m) in k2.iter().enumerate() {
            let w = {
                let slot = &mut cache[m as usize];
                if slot.is_nan() {
                    *slot = f(m as f64);
                }
                *slot
            };
            for c in 0..3 {
                out.coeffs[c][idx] *= w;
            }
        }
        out
    }

    /// Real L² inner product `∫ u·v dx`.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        let mut acc = 0.0;
        for c in 0..3 {
            acc += self.coeffs[c]
                .iter()
                .zip(&other.coeffs[c])
                .map(|(a, b)| (a * b.conj()).re)
                .sum::<f64>();
        }
        acc * VOLUME
    }

    /// `‖u‖₂²` over the torus.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>() * VOLUME
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Zeroes every mode with `|k| > floor(N/3)`.
    pub fn dealiased(mut self) -> Self {
        self.dealias_in_place();
        self
    }

    pub(crate) fn dealias_in_place(&mut self) {
        let km = self.grid.k_max() as i64;
        let coeffs = &mut self.coeffs;
        self.grid.for_each_mode(|idx, k| {
            if k[0] * k[0] + k[1] * k[1] + k[2] * k[2] > km * km {
                for c in coeffs.iter_mut() {
                    c[idx] = Complex64::default();
                }
            }
        });
    }

    /// Largest `|k · û(k)| / (|k| |û(k)|)` over nonzero modes.
    pub fn divergence_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let k = self.grid.mode(idx);
            let kn = ((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64).sqrt();
            let amp = (0..3).map(|c| self.coeffs[c][idx].norm_sqr()).sum::<f64>().sqrt();
            if kn == 0.0 || amp == 0.0 {
                continue;
            }
            let div: Complex64 = (0..3).map(|c| self.coeffs[c][idx] * k[c] as f64).sum();
            worst = worst.max(div.norm() / (kn * amp));
        }
        worst
    }

    /// Largest `|û(-k) - conj(û(k))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let neg = self.grid.negated_index(idx);
            for c in 0..3 {
                worst = worst.max((self.coeffs[c][neg] - self.coeffs[c][idx].conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().flatten().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|v| v.re == 0.0 && v.im == 0.0)
    }
}

/// Coefficient of mode `k` is `(1/N³) Σ_x f(x) e^{-ik·x}`.
pub fn forward_transform(f: &PhysicalField) -> Result<SpectralField> {
    if !f.is_finite() {
        return Err(Error::BlowUp("non-finite physical field".into()));
    }
    let grid = f.grid();
    let plan = fft::plan(grid);
    let (c0, c1) = plan.forward_pair(grid, f.component(0), f.component(1));
    let c2 = plan.forward_single(grid, f.component(2));
    Ok(SpectralField { grid, coeffs: [c0, c1, c2], divergence_free: false })
}

pub fn inverse_transform(u: &SpectralField) -> PhysicalField {
    let grid = u.grid();
    let plan = fft::plan(grid);
    let (v0, v1) = plan.inverse_pair(u.component(0), u.component(1));
    let v2 = plan.inverse_single(u.component(2));
    PhysicalField { grid, values: [v0, v1, v2] }
}

/// Physical magnitude maximum `‖u‖_∞` on the lattice.
pub fn linf_norm(u: &SpectralField) -> f64 {
    inverse_transform(u).max_magnitude()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn constant_field_has_only_mean_mode() {
        let g = Grid::new(16).unwrap();
        let f = PhysicalField::from_fn(g, |_| [1.0, 0.0, 0.0]);
        let u = forward_transform(&f).unwrap();
        for idx in 0..g.len() {
            let expect = if idx == 0 { 1.0 } else { 0.0 };
            assert!((u.component(0)[idx].re - expect).abs() < 1e-14);
            assert!(u.component(0)[idx].im.abs() < 1e-14);
            assert!(u.component(1)[idx].norm() < 1e-14);
        }
    }

    #[test]
    fn single_cosine_mode() {
        let g = Grid::new(16).unwrap();
        let a = 2.5;
        let f = PhysicalField::from_fn(g, |x| [0.0, a * (3.0 * x[0]).cos(), 0.0]);
        let u = forward_transform(&f).unwrap();
        for idx in 0..g.len() {
            let k = g.mode(idx);
            let expect = if k == [3, 0, 0] || k == [-3, 0, 0] { a / 2.0 } else { 0.0 };
            assert!((u.component(1)[idx] - Complex64::new(expect, 0.0)).norm() < 1e-13, "{k:?}");
            assert!(u.component(0)[idx].norm() < 1e-14);
            assert!(u.component(2)[idx].norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let g = Grid::new(16).unwrap();
        let mut vals: [Vec<f64>; 3] = std::array::from_fn(|_| vec![0.0; g.len()]);
        vals[2][7] = f64::NAN;
        let f = PhysicalField::new(g, vals).unwrap();
        assert!(matches!(forward_transform(&f), Err(Error::BlowUp(_))));
    }

    #[test]
    fn roundtrip_is_tight() {
        let g = Grid::new(16).unwrap();
        let f = PhysicalField::from_fn(g, |x| {
            [
                (x[0] + 2.0 * x[1]).sin() + 0.3,
                (x[2] - x[0]).cos() * (3.0 * x[1]).sin(),
                (2.0 * x[2]).cos(),
            ]
        });
        let back = inverse_transform(&forward_transform(&f).unwrap());
        let mut num = 0.0;
        let mut den = 0.0;
        for c in 0..3 {
            for (a, b) in f.component(c).iter().zip(back.component(c)) {
                num += (a - b).powi(2);
                den += a * a;
            }
        }
        assert!((num / den).sqrt() < 1e-12);
        assert!(rel(forward_transform(&f).unwrap().l2_norm_sq(), den * g.cell_volume()) < 1e-12);
    }
}

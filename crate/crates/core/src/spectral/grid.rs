use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Domain period of the torus in every direction.
pub const PERIOD: f64 = 2.0 * PI;

/// Uniform `N^3` lattice on the 2π-periodic torus.
///
/// Spectral arrays are stored row-major with `k1` slowest, using the usual
/// FFT index order: index `i` carries wavenumber `i` for `i < N/2` and
/// `i - N` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "grid size must be a power of two >= 16, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of lattice points, `N^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn period(&self) -> f64 {
        PERIOD
    }

    /// Largest retained wavenumber magnitude under the two-thirds rule.
    pub fn k_max(&self) -> usize {
        self.n / 3
    }

    pub fn spacing(&self) -> f64 {
        PERIOD / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    /// Signed wavenumber carried by storage index `i` along one axis.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage index along one axis for a (possibly negative) wavenumber.
    #[inline]
    pub fn axis_index(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    #[inline]
    pub fn index_of(&self, k: [i64; 3]) -> usize {
        (self.axis_index(k[0]) * self.n + self.axis_index(k[1])) * self.n + self.axis_index(k[2])
    }

    #[inline]
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let n = self.n;
        [
            self.wavenumber(idx / (n * n)),
            self.wavenumber((idx / n) % n),
            self.wavenumber(idx % n),
        ]
    }

    /// Storage index of `-k` for the mode stored at `idx`.
    #[inline]
    pub fn negated_index(&self, idx: usize) -> usize {
        let n = self.n;
        let neg = |i: usize| (n - i) % n;
        (neg(idx / (n * n)) * n + neg((idx / n) % n)) * n + neg(idx % n)
    }

    /// Calls `f(idx, k)` for every storage index in order, without per-index division.
    #[inline]
    pub fn for_each_mode(&self, mut f: impl FnMut(usize, [i64; 3])) {
        let ks: Vec<i64> = (0..self.n).map(|i| self.wavenumber(i)).collect();
        let mut idx = 0;
        for &k1 in &ks {
            for &k2 in &ks {
                for &k3 in &ks {
                    f(idx, [k1, k2, k3]);
                    idx += 1;
                }
            }
        }
    }

    /// `|k|^2` for every storage index.
    pub fn k_squared_table(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each_mode(|_, k| out.push((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as u32));
        out
    }

    /// Whether a mode survives dealiasing: `|k| <= floor(N/3)`.
    #[inline]
    pub fn is_retained(&self, k: [i64; 3]) -> bool {
        let km = self.k_max() as i64;
        k[0] * k[0] + k[1] * k[1] + k[2] * k[2] <= km * km
    }

    /// Physical coordinate of lattice index `j` along one axis.
    pub fn coordinate(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(8).is_err());
        assert!(Grid::new(48).is_err());
        assert!(Grid::new(32).is_ok());
    }

    #[test]
    fn dealias_cutoff() {
        assert_eq!(Grid::new(16).unwrap().k_max(), 5);
        assert_eq!(Grid::new(32).unwrap().k_max(), 10);
        assert_eq!(Grid::new(64).unwrap().k_max(), 21);
    }

    #[test]
    fn index_mode_roundtrip() {
        let g = Grid::new(16).unwrap();
        for idx in 0..g.len() {
            let k = g.mode(idx);
            assert_eq!(g.index_of(k), idx);
            let neg = g.negated_index(idx);
            let kn = g.mode(neg);
            for c in 0..3 {
                // -(-N/2) wraps to -N/2
                assert_eq!((kn[c] + k[c]).rem_euclid(16), 0);
            }
        }
    }
}

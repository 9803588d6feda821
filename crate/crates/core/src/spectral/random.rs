use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::field::{SpectralField, VOLUME};
use super::grid::Grid;
use super::ops::leray_project;
use crate::error::{Error, Result};

/// Band and spectrum of a random divergence-free field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub k_lo: f64,
    pub k_hi: f64,
    /// Shell-energy spectrum slope: `E(|k|) ∝ |k|^slope`.
    pub slope: f64,
    /// Target root-mean-square speed `‖u‖₂ / (2π)^{3/2}`.
    pub rms: f64,
}

/// Random divergence-free field supported in `k_lo <= |k| <= k_hi`.
///
/// The draw order depends only on `k_hi` and `seed`, so the same seed gives
/// the same continuous field on every grid that resolves the band.
pub fn random_band(grid: Grid, band: Band, seed: u64) -> Result<SpectralField> {
    if !(band.k_lo >= 0.0 && band.k_hi >= band.k_lo && band.k_hi <= grid.k_max() as f64) {
        return Err(Error::Parameter(format!(
            "band [{}, {}] not inside the dealiased range [0, {}]",
            band.k_lo,
            band.k_hi,
            grid.k_max()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kh = band.k_hi.floor() as i64;
    let side = (2 * kh + 1) as usize;
    let mut draws = vec![[Complex64::default(); 3]; side * side * side];
    let at = |k: [i64; 3]| (((k[0] + kh) as usize * side) + (k[1] + kh) as usize) * side + (k[2] + kh) as usize;
    for k1 in -kh..=kh {
        for k2 in -kh..=kh {
            for k3 in -kh..=kh {
                let mut v = [Complex64::default(); 3];
                for slot in &mut v {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    *slot = Complex64::new(re, im);
                }
                draws[at([k1, k2, k3])] = v;
            }
        }
    }

    let mut u = SpectralField::zeros(grid);
    for k1 in -kh..=kh {
        for k2 in -kh..=kh {
            for k3 in -kh..=kh {
                let k = [k1, k2, k3];
                let r = ((k1 * k1 + k2 * k2 + k3 * k3) as f64).sqrt();
                if r < band.k_lo || r > band.k_hi {
                    continue;
                }
                let weight = if r > 0.0 { r.powf((band.slope - 2.0) / 2.0) } else { 1.0 };
                let a = draws[at(k)];
                let b = draws[at([-k1, -k2, -k3])];
                let idx = grid.index_of(k);
                let coeffs = u.coeffs_mut();
                for c in 0..3 {
                    coeffs[c][idx] = (a[c] + b[c].conj()) * (0.5 * weight);
                }
            }
        }
    }
    let u = leray_project(&u);
    let norm = u.l2_norm();
    if norm == 0.0 {
        return Err(Error::Parameter("band contains no modes".into()));
    }
    Ok(u.scaled(band.rms * VOLUME.sqrt() / norm))
}

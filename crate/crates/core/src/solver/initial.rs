use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::random::{random_band, Band};
use crate::spectral::{Grid, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum InitialCondition {
    TaylorGreen { amplitude: f64 },
    /// `(0, A cos(k x₁), 0)`
    SingleShear { amplitude: f64, wavenumber: i64 },
    /// Circularly polarized `A (0, cos(k x₁), sin(k x₁))`; `|u| = A` everywhere.
    PlaneWave { amplitude: f64, wavenumber: i64 },
    RandomBand { k_lo: f64, k_hi: f64, slope: f64, rms: f64, seed: u64 },
}

impl InitialCondition {
    pub fn generate(&self, grid: Grid) -> Result<SpectralField> {
        let check_k = |k: i64| {
            if k == 0 || !grid.is_retained([k, 0, 0]) {
                Err(Error::Parameter(format!("wavenumber {k} not in the dealiased range")))
            } else {
                Ok(())
            }
        };
        match *self {
            InitialCondition::TaylorGreen { amplitude } => Ok(taylor_green(grid, amplitude)),
            InitialCondition::SingleShear { amplitude, wavenumber } => {
                check_k(wavenumber)?;
                Ok(single_shear(grid, amplitude, wavenumber))
            }
            InitialCondition::PlaneWave { amplitude, wavenumber } => {
                check_k(wavenumber)?;
                Ok(plane_wave(grid, amplitude, wavenumber))
            }
            InitialCondition::RandomBand { k_lo, k_hi, slope, rms, seed } => {
                random_band(grid, Band { k_lo, k_hi, slope, rms }, seed)
            }
        }
    }
}

/// `A (sin x₁ cos x₂ cos x₃, −cos x₁ sin x₂ cos x₃, 0)`, built mode by mode.
pub fn taylor_green(grid: Grid, amplitude: f64) -> SpectralField {
    let mut u = SpectralField::zeros(grid);
    let z = Complex64::default();
    for a in [-1i64, 1] {
        for b in [-1i64, 1] {
            for c in [-1i64, 1] {
                // sin x₁ cos x₂ cos x₃ → −i a/8 ; −cos x₁ sin x₂ cos x₃ → i b/8
                let v1 = Complex64::new(0.0, -(a as f64) * amplitude / 8.0);
                let v2 = Complex64::new(0.0, b as f64 * amplitude / 8.0);
                u.set_mode([a, b, c], [v1, v2, z]);
            }
        }
    }
    crate::spectral::leray_project(&u)
}

pub fn single_shear(grid: Grid, amplitude: f64, k: i64) -> SpectralField {
    let mut u = SpectralField::zeros(grid);
    let z = Complex64::default();
    u.set_mode([k, 0, 0], [z, Complex64::new(amplitude / 2.0, 0.0), z]);
    crate::spectral::leray_project(&u)
}

pub fn plane_wave(grid: Grid, amplitude: f64, k: i64) -> SpectralField {
    let mut u = SpectralField::zeros(grid);
    let z = Complex64::default();
    // sin(k x₁) = (e^{ikx₁} − e^{−ikx₁}) / 2i
    u.set_mode([k, 0, 0], [z, Complex64::new(amplitude / 2.0, 0.0), Complex64::new(0.0, -amplitude / 2.0)]);
    crate::spectral::leray_project(&u)
}

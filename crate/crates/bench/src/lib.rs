//! Shared fixtures for the benchmarks.

use dissrange::solver::taylor_green;
use dissrange::spectral::random::{random_band, Band};
use dissrange::{Grid, SpectralField};

pub const SIZES: [usize; 2] = [32, 64];

pub fn taylor_green_state(n: usize) -> SpectralField {
    taylor_green(Grid::new(n).expect("power of two"), 1.0)
}

pub fn broadband_state(n: usize) -> SpectralField {
    let grid = Grid::new(n).expect("power of two");
    let band = Band { k_lo: 1.0, k_hi: grid.k_max() as f64, slope: -5.0 / 3.0, rms: 1.0 };
    random_band(grid, band, 7).expect("band within the dealiased range")
}

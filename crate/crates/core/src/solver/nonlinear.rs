use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::lattice::{retained, Retained};
use crate::spectral::{fft, SpectralField};

pub(crate) struct Evaluation {
    pub term: SpectralField,
    /// Lattice maximum of `|u|`.
    pub u_max: f64,
}

/// `i k_axis û_comp`; `u` is zero outside the retained modes.
fn derivative(u: &SpectralField, modes: &Retained, axis: usize, comp: usize) -> Vec<Complex64> {
    let src = u.component(comp);
    let mut out = vec![Complex64::default(); src.len()];
    for (&idx, k) in modes.idx.iter().zip(&modes.k) {
        let k = k[axis];
        out[idx] = Complex64::new(-src[idx].im * k, src[idx].re * k);
    }
    out
}

/// `−P[(u·∇)u]`, products formed on the lattice and truncated to `|k| ≤ N/3`.
/// `u` is expected to be dealiased already.
pub fn nonlinear_term(u: &SpectralField) -> Result<SpectralField> {
    evaluate(u).map(|e| e.term)
}

pub(crate) fn evaluate(u: &SpectralField) -> Result<Evaluation> {
    let grid = u.grid();
    let plan = fft::plan(grid);
    let modes = retained(grid);
    let d = |axis, comp| derivative(u, &modes, axis, comp);
    let (u0, u1) = plan.inverse_pair_band(grid, u.component(0), u.component(1));
    let (u2, d00) = plan.inverse_pair_band(grid, u.component(2), &d(0, 0));
    let (d01, d02) = plan.inverse_pair_band(grid, &d(0, 1), &d(0, 2));
    let (d10, d11) = plan.inverse_pair_band(grid, &d(1, 0), &d(1, 1));
    let (d12, d20) = plan.inverse_pair_band(grid, &d(1, 2), &d(2, 0));
    let (d21, d22) = plan.inverse_pair_band(grid, &d(2, 1), &d(2, 2));

    let len = grid.len();
    let mut n0 = vec![0.0; len];
    let mut n1 = vec![0.0; len];
    let mut n2 = vec![0.0; len];
    let mut u_max_sq: f64 = 0.0;
    for x in 0..len {
        let (a, b, c) = (u0[x], u1[x], u2[x]);
        n0[x] = a * d00[x] + b * d10[x] + c * d20[x];
        n1[x] = a * d01[x] + b * d11[x] + c * d21[x];
        n2[x] = a * d02[x] + b * d12[x] + c * d22[x];
        let s = a * a + b * b + c * c;
        if !s.is_finite() {
            return Err(Error::BlowUp("non-finite velocity".into()));
        }
        u_max_sq = u_max_sq.max(s);
    }
    if !n0.iter().chain(&n1).chain(&n2).all(|v| v.is_finite()) {
        return Err(Error::BlowUp("non-finite advection term".into()));
    }

    let (f0, f1) = plan.forward_pair_band(grid, &modes, &n0, &n1);
    let f2 = plan.forward_single_band(grid, &modes, &n2);
    // negate, truncate to the retained modes, and project in one pass
    let mut out: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); len]);
    for (j, (&idx, k)) in modes.idx.iter().zip(&modes.k).enumerate() {
        let v = [-f0[idx], -f1[idx], -f2[idx]];
        let k2 = modes.k2[j] as f64;
        let s = if k2 > 0.0 { (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / k2 } else { Complex64::default() };
        for c in 0..3 {
            out[c][idx] = v[c] - s * k[c];
        }
    }
    let term = SpectralField::from_coeffs(grid, out, true)?;
    Ok(Evaluation { term, u_max: u_max_sq.sqrt() })
}

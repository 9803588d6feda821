use num_complex::Complex64;

use super::field::{SpectralField, VOLUME};

/// Removes the gradient part: `û − k (k·û)/|k|²` for `k ≠ 0`, mean mode untouched.
pub fn leray_project(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let mut out = u.clone();
    let coeffs = out.coeffs_mut();
    grid.for_each_mode(|idx, k| {
        if idx == 0 {
            return;
        }
        let kf = [k[0] as f64, k[1] as f64, k[2] as f64];
        let k2 = kf[0] * kf[0] + kf[1] * kf[1] + kf[2] * kf[2];
        let dot = coeffs[0][idx] * kf[0] + coeffs[1][idx] * kf[1] + coeffs[2][idx] * kf[2];
        let s = dot / k2;
        for c in 0..3 {
            coeffs[c][idx] -= s * kf[c];
        }
    });
    out.with_divergence_free(true)
}

/// `ω̂(k) = i k × û(k)`.
pub fn vorticity(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let mut out = SpectralField::zeros(grid);
    let src = u.coeffs();
    let dst = out.coeffs_mut();
    let i = Complex64::i();
    grid.for_each_mode(|idx, k| {
        let (k1, k2, k3) = (k[0] as f64, k[1] as f64, k[2] as f64);
        let (a, b, c) = (src[0][idx], src[1][idx], src[2][idx]);
        dst[0][idx] = i * (c * k2 - b * k3);
        dst[1][idx] = i * (a * k3 - c * k1);
        dst[2][idx] = i * (b * k1 - a * k2);
    });
    out
}

/// `∂_axis u` for every component.
pub fn partial(u: &SpectralField, axis: usize) -> SpectralField {
    let grid = u.grid();
    let mut out = u.clone();
    let coeffs = out.coeffs_mut();
    let i = Complex64::i();
    for idx in 0..grid.len() {
        let k = grid.mode(idx)[axis] as f64;
        for c in 0..3 {
            coeffs[c][idx] *= i * k;
        }
    }
    out
}

/// Spectral divergence `i k · û(k)` as a scalar coefficient array.
pub fn divergence(u: &SpectralField) -> Vec<Complex64> {
    let grid = u.grid();
    let src = u.coeffs();
    let i = Complex64::i();
    (0..grid.len())
        .map(|idx| {
            let k = grid.mode(idx);
            i * (src[0][idx] * k[0] as f64 + src[1][idx] * k[1] as f64 + src[2][idx] * k[2] as f64)
        })
        .collect()
}

/// `‖∇u‖₂² = (2π)³ Σ |k|² |û(k)|²`.
pub fn gradient_l2(u: &SpectralField) -> f64 {
    weighted_l2(u, |k2| k2)
}

/// `(2π)³ Σ w(|k|²) |û(k)|²`.
pub fn weighted_l2(u: &SpectralField, w: impl Fn(f64) -> f64) -> f64 {
    let grid = u.grid();
    let coeffs = u.coeffs();
    let mut acc = 0.0;
    for idx in 0..grid.len() {
        let k = grid.mode(idx);
        let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
        let m: f64 = (0..3).map(|c| coeffs[c][idx].norm_sqr()).sum();
        if m != 0.0 {
            acc += w(k2) * m;
        }
    }
    acc * VOLUME
}

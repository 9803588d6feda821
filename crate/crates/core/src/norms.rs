//! Lebesgue, Sobolev, and Besov norms, and the logarithmic Sobolev ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{lambda, FilterBank};
use crate::spectral::{inverse_transform, weighted_l2, PhysicalField, SpectralField};

/// Quadrature `L^p` norm of the pointwise magnitude; `p = ∞` gives the lattice maximum.
pub fn lp_norm(f: &PhysicalField, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Parameter(format!("L^p exponent must be >= 1, got {p}")));
    }
    let grid = f.grid();
    if p.is_infinite() {
        return Ok(f.max_magnitude());
    }
    let sum: f64 = (0..grid.len()).map(|i| f.magnitude(i).powf(p)).sum();
    Ok((sum * grid.cell_volume()).powf(1.0 / p))
}

fn shell_lp(uq: &SpectralField, p: f64) -> Result<f64> {
    if uq.is_zero() {
        return Ok(0.0);
    }
    if p == 2.0 {
        return Ok(uq.l2_norm());
    }
    lp_norm(&inverse_transform(uq), p)
}

/// `sup_q λ_q^s ‖u_q‖_p` over the resolved shells `q ∈ [−1, q_max]`.
pub fn besov_norm(u: &SpectralField, bank: &FilterBank, s: f64, p: f64) -> Result<f64> {
    let mut best: f64 = 0.0;
    for q in bank.shells() {
        let uq = bank.shell_project(u, q)?;
        best = best.max(lambda(q).powf(s) * shell_lp(&uq, p)?);
    }
    Ok(best)
}

/// `B^s_{∞,∞}` from precomputed per-shell sup norms (indexed by `q + 1`).
pub fn besov_inf_from_shells(shell_linf: &[f64], s: f64) -> f64 {
    shell_linf
        .iter()
        .enumerate()
        .map(|(i, v)| lambda(i as i32 - 1).powf(s) * v)
        .fold(0.0, f64::max)
}

/// Multiplier form `(Σ_k (1+|k|²)^s |û(k)|² (2π)³)^{1/2}`.
pub fn sobolev_norm(u: &SpectralField, s: f64) -> f64 {
    if s == 0.0 {
        return u.l2_norm();
    }
    weighted_l2(u, |k2| (1.0 + k2).powf(s)).sqrt()
}

/// Dyadic surrogate `(Σ_q λ_q^{2s} ‖u_q‖₂²)^{1/2}`.
pub fn sobolev_norm_dyadic(u: &SpectralField, bank: &FilterBank, s: f64) -> f64 {
    bank.shells()
        .map(|q| lambda(q).powf(2.0 * s) * bank.shell_project(u, q).expect("in range").l2_norm_sq())
        .sum::<f64>()
        .sqrt()
}

pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// `‖u‖_∞ / (‖u‖_{B⁰_{∞,∞}} (1 + log₊ ‖u‖_{H^s}))`.
pub fn log_sobolev_ratio(u: &SpectralField, bank: &FilterBank, s: f64) -> Result<f64> {
    if s <= 1.5 {
        return Err(Error::Parameter(format!("log-Sobolev index must exceed 3/2, got {s}")));
    }
    let linf = inverse_transform(u).max_magnitude();
    let b0 = besov_inf_from_shells(&bank.shell_norms(u).linf, 0.0);
    if linf == 0.0 || b0 == 0.0 {
        return Err(Error::UndefinedRatio("log-Sobolev ratio of the zero field".into()));
    }
    Ok(linf / (b0 * (1.0 + log_plus(sobolev_norm(u, s)))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub l2: f64,
    pub linf: f64,
    /// `(s, ‖u‖_{H^s})`.
    pub hs: Vec<(f64, f64)>,
    /// `(s, p, ‖u‖_{B^s_{p,∞}})`.
    pub besov: Vec<(f64, f64, f64)>,
    pub per_shell_l2: Vec<f64>,
    pub per_shell_linf: Vec<f64>,
}

impl NormReport {
    pub fn compute(u: &SpectralField, bank: &FilterBank, hs: &[f64], besov: &[(f64, f64)]) -> Result<Self> {
        let shells = bank.shell_norms(u);
        let besov = besov
            .iter()
            .map(|&(s, p)| {
                let v = if p.is_infinite() {
                    besov_inf_from_shells(&shells.linf, s)
                } else {
                    besov_norm(u, bank, s, p)?
                };
                Ok((s, p, v))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            l2: u.l2_norm(),
            linf: inverse_transform(u).max_magnitude(),
            hs: hs.iter().map(|&s| (s, sobolev_norm(u, s))).collect(),
            besov,
            per_shell_l2: shells.l2,
            per_shell_linf: shells.linf,
        })
    }
}

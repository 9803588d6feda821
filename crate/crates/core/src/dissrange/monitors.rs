use serde::Serialize;

use super::{DiagnosticsParams, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::lp::FilterBank;
use crate::norms::{besov_inf_from_shells, log_plus};
use crate::spectral::SpectralField;

/// Largest admissible spread between the `h` and `2h` centered differences,
/// relative to the largest derivative magnitude.
pub const DERIVATIVE_SPREAD_LIMIT: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GronwallFit {
    /// Smallest `C ≥ 0` that makes the differential inequality hold at every interior sample.
    pub constant: f64,
    pub derivative_spread: f64,
    pub interior_samples: usize,
}

/// Centered differences of `x(t)` at interior samples with stencil half-width `w`.
pub(crate) fn centered(times: &[f64], x: &[f64], w: usize) -> Vec<Option<f64>> {
    (0..x.len())
        .map(|i| {
            (i >= w && i + w < x.len()).then(|| (x[i + w] - x[i - w]) / (times[i + w] - times[i - w]))
        })
        .collect()
}

/// Fits `½ d/dt X ≤ C · a(t) · X` at interior samples, where the caller supplies
/// `X` and the per-sample coefficient `a(t) X`.
pub(crate) fn fit_differential_inequality(times: &[f64], x: &[f64], rhs: &[f64]) -> Result<GronwallFit> {
    if x.len() < 3 {
        return Err(Error::InsufficientData(format!("{} samples, need at least 3", x.len())));
    }
    let d1 = centered(times, x, 1);
    let scale = d1.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut spread: f64 = 0.0;
    if x.len() >= 5 && scale > 0.0 {
        let d2 = centered(times, x, 2);
        for (a, b) in d1.iter().zip(&d2) {
            if let (Some(a), Some(b)) = (a, b) {
                spread = spread.max((a - b).abs() / scale);
            }
        }
    }
    if spread > DERIVATIVE_SPREAD_LIMIT {
        return Err(Error::Resolution(format!(
            "centered differences disagree by {:.1}% between stencils",
            100.0 * spread
        )));
    }
    let mut constant: f64 = 0.0;
    for (i, d) in d1.iter().enumerate() {
        let Some(d) = d else { continue };
        let lhs = 0.5 * d;
        if lhs > 0.0 {
            constant = constant.max(if rhs[i] > 0.0 { lhs / rhs[i] } else { f64::INFINITY });
        }
    }
    Ok(GronwallFit { constant, derivative_spread: spread, interior_samples: x.len() - 2 })
}

/// Measured constant in `½ d/dt‖u‖²_{H^s} ≤ C (1+f)‖u‖²_{H^s}(1 + log₊‖u‖_{H^s})`.
pub fn gronwall_residual(traj: &TrajectoryRecord, s: f64) -> Result<GronwallFit> {
    if s != traj.sobolev_s {
        return Err(Error::Parameter(format!(
            "record carries H^{} norms, asked for H^{s}",
            traj.sobolev_s
        )));
    }
    let times: Vec<f64> = traj.samples.iter().map(|p| p.t()).collect();
    let x: Vec<f64> = traj.samples.iter().map(|p| p.hs_norm * p.hs_norm).collect();
    let rhs: Vec<f64> = traj
        .samples
        .iter()
        .map(|p| (1.0 + p.state.f) * p.hs_norm * p.hs_norm * (1.0 + log_plus(p.hs_norm)))
        .collect();
    fit_differential_inequality(&times, &x, &rhs)
}

/// `‖b − a‖_{B^{−1}_{∞,∞}}`.
pub fn besov_jump(a: &SpectralField, b: &SpectralField, bank: &FilterBank) -> f64 {
    besov_inf_from_shells(&bank.shell_norms(&b.sub(a)).linf, -1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub max_jump: f64,
    /// `c₁ν`
    pub threshold: f64,
    pub below_threshold: bool,
    /// Consecutive-sample maximum standing in for the left limsup.
    pub surrogate: bool,
}

pub fn jump_monitor(traj: &TrajectoryRecord, params: &DiagnosticsParams) -> Result<JumpReport> {
    if !(params.nu > 0.0) {
        return Err(Error::Parameter("jump monitor needs a positive viscosity".into()));
    }
    if traj.samples.len() < 2 {
        return Err(Error::InsufficientData("jump monitor needs two samples".into()));
    }
    let max_jump = traj.samples.iter().filter_map(|s| s.jump_b_m1).fold(0.0, f64::max);
    let threshold = params.c1 * params.nu;
    Ok(JumpReport { max_jump, threshold, below_threshold: max_jump < threshold, surrogate: true })
}

/// Pointwise and integrated checks of the `Λ ∈ L¹` argument on `U`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaChain {
    pub checked_samples: usize,
    /// Samples violating `c₀νΛ ≤ Λ² (C_B ‖u_Q‖₂/(2π)^{3/2})²`.
    pub pointwise_violations: usize,
    /// Samples violating `(c₀ν)²Λ ≤ Λ^{−1}‖u_Q‖_∞²` (direct from `‖u_Q‖_∞ ≥ c₀νΛ`).
    pub reverse_violations: usize,
    /// Samples violating `Λ^{−1}‖u_Q‖_∞² ≤ Λ² (C_B ‖u_Q‖₂/(2π)^{3/2})²`.
    pub bernstein_violations: usize,
    /// Smallest `Λ²(C_B‖u_Q‖₂/(2π)^{3/2})² / (c₀νΛ)` over checked samples.
    pub min_pointwise_margin: f64,
    pub int_lambda: f64,
    pub int_lambda_52: f64,
    pub int_u_lambda: f64,
    /// `(1/(c₀ν)) C_B² ∫_U Λ² (‖u_Q‖₂/(2π)^{3/2})² dt`
    pub integrated_bound: f64,
    pub integrated_ok: bool,
    /// `∫Λ ≤ ∫Λ^{5/2}`; `None` unless `Λ ≥ 1` at every sample.
    pub monotone_ok: Option<bool>,
    pub unresolved_segments: usize,
}

pub fn lemma_chain(traj: &TrajectoryRecord, bernstein: f64) -> LemmaChain {
    let c0nu = traj.params.threshold();
    let mut checked = 0;
    let (mut pointwise, mut reverse, mut bern) = (0, 0, 0);
    let mut margin = f64::INFINITY;
    for s in traj.samples.iter().filter(|s| s.state.in_dissipative_set()) {
        let (linf, l2) = s.state.top_norms().expect("finite Λ");
        let lam = s.state.lambda;
        let upper = lam * lam * (bernstein * l2).powi(2);
        let mid = linf * linf / lam;
        checked += 1;
        if c0nu * lam > upper {
            pointwise += 1;
        }
        if c0nu * c0nu * lam > mid {
            reverse += 1;
        }
        if mid > upper {
            bern += 1;
        }
        margin = margin.min(upper / (c0nu * lam));
    }
    let finite = |p: f64| move |s: &super::Sample| s.state.lambda.is_finite().then(|| s.state.lambda.powf(p));
    let (int_lambda, unresolved) = traj.integrate(finite(1.0));
    let (int_lambda_52, _) = traj.integrate(finite(2.5));
    let int_u_lambda = traj.integrate_over_u(|s| s.state.lambda);
    let integrated_bound = bernstein * bernstein / c0nu
        * traj.integrate_over_u(|s| {
            let (_, l2) = s.state.top_norms().unwrap_or((0.0, 0.0));
            (s.state.lambda * l2).powi(2)
        });
    let all_ge_one = traj.samples.iter().all(|s| s.state.lambda >= 1.0 && s.state.lambda.is_finite());
    LemmaChain {
        checked_samples: checked,
        pointwise_violations: pointwise,
        reverse_violations: reverse,
        bernstein_violations: bern,
        min_pointwise_margin: margin,
        int_lambda,
        int_lambda_52,
        int_u_lambda,
        integrated_bound,
        integrated_ok: int_u_lambda <= integrated_bound,
        monotone_ok: all_ge_one.then_some(int_lambda <= int_lambda_52),
        unresolved_segments: unresolved,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissrange::trajectory::fixtures::synthetic;
    use crate::spectral::Grid;
    use num_complex::Complex64;

    #[test]
    fn stationary_series_needs_no_constant() {
        let t: Vec<f64> = (0..8).map(|i| i as f64 * 0.1).collect();
        let x = vec![4.0; 8];
        let fit = fit_differential_inequality(&t, &x, &[1.0; 8]).unwrap();
        assert_eq!(fit.constant, 0.0);
        assert_eq!(fit.derivative_spread, 0.0);
    }

    #[test]
    fn decay_needs_no_constant() {
        let t: Vec<f64> = (0..10).map(|i| i as f64 * 0.05).collect();
        let x: Vec<f64> = t.iter().map(|t| (-0.3 * t).exp()).collect();
        let fit = fit_differential_inequality(&t, &x, &x).unwrap();
        assert_eq!(fit.constant, 0.0);
    }

    #[test]
    fn growth_constant_is_recovered() {
        // ½ d/dt e^{2t} = e^{2t}, rhs = e^{2t}  ⇒  C → 1
        let t: Vec<f64> = (0..40).map(|i| i as f64 * 0.01).collect();
        let x: Vec<f64> = t.iter().map(|t| (2.0 * t).exp()).collect();
        let fit = fit_differential_inequality(&t, &x, &x).unwrap();
        assert!((fit.constant - 1.0).abs() < 1e-3);
    }

    #[test]
    fn coarse_sampling_is_rejected() {
        let t: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let x: Vec<f64> = t.iter().map(|t| (3.0 * t).sin()).collect();
        assert!(matches!(fit_differential_inequality(&t, &x, &x), Err(Error::Resolution(_))));
        assert!(matches!(fit_differential_inequality(&t[..2], &x[..2], &x[..2]), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn heat_decay_jump_closed_form() {
        let g = Grid::new(32).unwrap();
        let bank = FilterBank::new(g);
        let z = Complex64::default();
        let mut u0 = SpectralField::zeros(g);
        u0.set_mode([4, 0, 0], [z, Complex64::new(0.35, 0.0), z]);
        let (nu, dt): (f64, f64) = (0.01, 0.1);
        let decay = (-nu * 16.0 * dt).exp();
        let u1 = u0.scaled(decay);
        let b0 = besov_inf_from_shells(&bank.shell_norms(&u0).linf, -1.0);
        let jump = besov_jump(&u0, &u1, &bank);
        assert!((jump - b0 * (1.0 - decay)).abs() < 1e-14);
        assert_eq!(besov_jump(&u0, &u0, &bank), 0.0);
    }

    #[test]
    fn jump_monitor_errors_and_constant_field() {
        let p = DiagnosticsParams::new(0.01, 0.1).unwrap();
        let mut tr = TrajectoryRecord::new(p, 3.0);
        tr.push(synthetic(0.0, 1.0, 1.0, 1.0, p));
        assert!(matches!(jump_monitor(&tr, &p), Err(Error::InsufficientData(_))));
        let mut s = synthetic(1.0, 1.0, 1.0, 1.0, p);
        s.jump_b_m1 = Some(0.0);
        tr.push(s);
        let rep = jump_monitor(&tr, &p).unwrap();
        assert_eq!(rep.max_jump, 0.0);
        assert!(rep.below_threshold);
        assert!((rep.threshold - 0.002).abs() < 1e-18);
    }

    #[test]
    fn lemma_chain_constant_series() {
        let p = DiagnosticsParams::new(0.01, 1.0).unwrap();
        let vol = crate::spectral::VOLUME.sqrt();
        let mut tr = TrajectoryRecord::new(p, 3.0);
        for i in 0..3 {
            tr.push(synthetic(0.5 * i as f64, 4.0, 0.05, 0.1 * vol, p));
        }
        let chain = lemma_chain(&tr, 1.0);
        assert_eq!(chain.checked_samples, 3);
        assert_eq!((chain.pointwise_violations, chain.reverse_violations, chain.bernstein_violations), (0, 0, 0));
        // upper = 16 · 0.1² = 0.16 against c₀νΛ = 0.04
        assert!((chain.min_pointwise_margin - 4.0).abs() < 1e-12);
        assert!((chain.int_u_lambda - 4.0).abs() < 1e-12);
        assert!((chain.integrated_bound - 16.0).abs() < 1e-12);
        assert!(chain.integrated_ok);
        assert_eq!(chain.monotone_ok, Some(true));
    }

    #[test]
    fn lemma_chain_counts_violations() {
        let p = DiagnosticsParams::new(0.01, 1.0).unwrap();
        let vol = crate::spectral::VOLUME.sqrt();
        let mut tr = TrajectoryRecord::new(p, 3.0);
        // upper = 16 · 0.01² = 0.0016 < c₀νΛ = 0.04; ‖u_Q‖_∞²/Λ = 1e-6 < (c₀ν)²Λ = 4e-4
        tr.push(synthetic(0.0, 4.0, 0.002, 0.01 * vol, p));
        tr.push(synthetic(1.0, 4.0, 0.002, 0.01 * vol, p));
        let chain = lemma_chain(&tr, 1.0);
        assert_eq!((chain.pointwise_violations, chain.reverse_violations), (2, 2));
        assert!(!chain.integrated_ok);
    }
}

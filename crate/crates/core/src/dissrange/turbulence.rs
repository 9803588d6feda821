use serde::Serialize;

use super::{DissipationState, TrajectoryRecord};
use crate::error::{Error, Result};

/// `clamp(2 ln(‖u_Q‖_∞ (2π)^{3/2} / ‖u_Q‖₂) / ln Λ, 0, 3)` for `1 < Λ < ∞`.
pub fn instantaneous_s(state: &DissipationState) -> Option<f64> {
    if !state.in_dissipative_set() {
        return None;
    }
    let (linf, l2) = state.top_norms()?;
    if l2 == 0.0 || linf == 0.0 {
        return None;
    }
    Some((2.0 * (linf / l2).ln() / state.lambda.ln()).clamp(0.0, 3.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Intermittency {
    /// Smallest `s ∈ [0,3]` with `⟨Λ^{2−s}‖u_Q‖_∞²⟩_U ≤ ⟨Λ²(‖u_Q‖₂/(2π)^{3/2})²⟩_U`.
    pub s: f64,
    pub d: f64,
    /// The averaged inequality fails even at `s = 3`; `s` is clamped.
    pub saturated: bool,
    pub s_inst: Vec<Option<f64>>,
}

pub fn intermittency_exponent(traj: &TrajectoryRecord) -> Result<Intermittency> {
    if !traj.has_dissipative_samples() {
        return Err(Error::UndefinedExponent);
    }
    let top = |s: &super::Sample| s.state.top_norms().unwrap_or((0.0, 0.0));
    let rhs = traj.average_over_u(|smp| {
        let (_, l2) = top(smp);
        smp.state.lambda.powi(2) * l2 * l2
    });
    let lhs = |s: f64| {
        traj.average_over_u(|smp| {
            let (linf, _) = top(smp);
            smp.state.lambda.powf(2.0 - s) * linf * linf
        })
    };
    let (s, saturated) = if lhs(0.0) <= rhs {
        (0.0, false)
    } else if lhs(3.0) > rhs {
        (3.0, true)
    } else {
        // lhs is nonincreasing in s since Λ > 1 on U
        let (mut lo, mut hi) = (0.0, 3.0);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if lhs(mid) <= rhs {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, false)
    };
    Ok(Intermittency {
        s,
        d: 3.0 - s,
        saturated,
        s_inst: traj.samples.iter().map(|smp| instantaneous_s(&smp.state)).collect(),
    })
}

/// `κ_d = (ε/ν³)^{1/(d+1)}`.
pub fn kappa_d(epsilon: f64, nu: f64, d: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Parameter(format!("kappa_d needs a positive viscosity, got {nu}")));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::Parameter(format!("dissipation rate must be >= 0, got {epsilon}")));
    }
    if !(0.0..=3.0).contains(&d) {
        return Err(Error::Parameter(format!("intermittency dimension must lie in [0,3], got {d}")));
    }
    Ok((epsilon / (nu * nu * nu)).powf(1.0 / (d + 1.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurbulenceSummary {
    /// `ε = ν⟨‖∇u‖₂²⟩`
    pub epsilon: f64,
    pub kappa_d: f64,
    pub s_exponent: f64,
    pub d_dimension: f64,
    pub mean_lambda: f64,
    pub mean_lambda_u: f64,
    /// `d > 3/2`: the hypothesis under which `∫Λ^{5/2}` is finite.
    pub intermittency_hypothesis_met: bool,
    pub saturated: bool,
    /// Segments left out of `⟨Λ⟩` because an endpoint had `Λ = ∞`.
    pub unresolved_segments: usize,
}

fn mean_lambdas(traj: &TrajectoryRecord) -> (f64, f64, usize) {
    let (mean, skipped) = traj.average(|s| s.state.lambda.is_finite().then_some(s.state.lambda));
    (mean, traj.average_over_u(|s| s.state.lambda), skipped)
}

pub fn turbulence_summary(traj: &TrajectoryRecord) -> Result<TurbulenceSummary> {
    let inter = intermittency_exponent(traj)?;
    let nu = traj.params.nu;
    let (grad_mean, _) = traj.average(|s| Some(s.grad_l2));
    let epsilon = nu * grad_mean;
    let (mean_lambda, mean_lambda_u, unresolved_segments) = mean_lambdas(traj);
    Ok(TurbulenceSummary {
        epsilon,
        kappa_d: kappa_d(epsilon, nu, inter.d)?,
        s_exponent: inter.s,
        d_dimension: inter.d,
        mean_lambda,
        mean_lambda_u,
        intermittency_hypothesis_met: inter.d > 1.5,
        saturated: inter.saturated,
        unresolved_segments,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaRatios {
    /// `(⟨Λ⟩ − 1) / κ_d`
    pub excess_ratio: f64,
    /// `⟨Λ⟩_U / κ_d`
    pub u_ratio: f64,
    pub kappa_d: Option<f64>,
    pub mean_lambda: f64,
    pub mean_lambda_u: f64,
}

/// Ratios of the mean dissipation wavenumber to `κ_d`; zero when `U` is empty.
pub fn mean_lambda_vs_kappa(traj: &TrajectoryRecord) -> Result<KappaRatios> {
    if !(traj.params.nu > 0.0) {
        return Err(Error::Parameter("kappa comparison needs a viscous trajectory".into()));
    }
    let (mean_lambda, mean_lambda_u, _) = mean_lambdas(traj);
    if !traj.has_dissipative_samples() {
        return Ok(KappaRatios { excess_ratio: 0.0, u_ratio: 0.0, kappa_d: None, mean_lambda, mean_lambda_u });
    }
    let summary = turbulence_summary(traj)?;
    Ok(KappaRatios {
        excess_ratio: (mean_lambda - 1.0) / summary.kappa_d,
        u_ratio: mean_lambda_u / summary.kappa_d,
        kappa_d: Some(summary.kappa_d),
        mean_lambda,
        mean_lambda_u,
    })
}

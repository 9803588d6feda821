use serde::Serialize;

use crate::dissrange::{fit_differential_inequality, shell_energy_from_l2, GronwallFit, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::norms::besov_inf_from_shells;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BkmIntegral {
    /// `∫ sup_{q≤Q} ‖ω_q‖_∞ dt`
    pub vorticity: f64,
    /// `∫ f dt`
    pub f: f64,
    pub span: f64,
    pub truncated: bool,
}

/// Trapezoidal time integrals of the criterion in vorticity and velocity form.
pub fn bkm_integral(traj: &TrajectoryRecord) -> BkmIntegral {
    let (vorticity, _) = traj.integrate(|s| s.state.f_vort);
    let (f, _) = traj.integrate(|s| Some(s.state.f));
    BkmIntegral { vorticity, f, span: traj.span(), truncated: traj.truncated.is_some() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaIntegral {
    pub p: f64,
    /// `∫ Λ^p dt` over segments with finite `Λ` at both ends.
    pub value: f64,
    pub skipped_segments: usize,
    /// Some sample failed the shell test in the top resolved shell.
    pub under_resolved: bool,
    pub truncated: bool,
}

pub fn lambda_lp_integral(traj: &TrajectoryRecord, p: f64) -> Result<LambdaIntegral> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Parameter(format!("exponent p must be positive, got {p}")));
    }
    if traj.params.nu <= 0.0 {
        return Err(Error::Parameter("∫Λ^p dt needs a viscous trajectory".into()));
    }
    if !traj.samples.iter().any(|s| s.state.is_finite_lambda()) {
        return Err(Error::NoData("every sample has Λ = ∞".into()));
    }
    let (value, skipped_segments) =
        traj.integrate(|s| s.state.is_finite_lambda().then(|| s.state.lambda.powf(p)));
    Ok(LambdaIntegral {
        p,
        value,
        skipped_segments,
        under_resolved: traj.samples.iter().any(|s| !s.state.resolved),
        truncated: traj.truncated.is_some(),
    })
}

/// `(∫ ‖u‖^r_{B^{2/r−1}_{∞,∞}} dt)^{1/r}`.
pub fn lps_norm(traj: &TrajectoryRecord, r: f64) -> Result<f64> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("r must be at least 1, got {r}")));
    }
    let s = 2.0 / r - 1.0;
    let (v, _) = traj.integrate(|p| Some(besov_inf_from_shells(&p.state.shell_linf, s).powf(r)));
    Ok(v.powf(1.0 / r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperEReport {
    pub eps_exp: f64,
    pub times: Vec<f64>,
    /// `E = Σ λ_q^{1+ε} ‖u_q‖₂²`
    pub shell_energy: Vec<f64>,
    /// `‖Du‖₂²`
    pub du_norm_sq: Vec<f64>,
    /// `log(2 + E / (c₀ν))`
    pub growth_factor: Vec<f64>,
    pub max_shell_energy: f64,
    /// `∫ ‖Du‖₂² dt`
    pub du_integral: f64,
    /// Smallest `C` with `½ dE/dt ≤ C log(2 + E/(c₀ν)) ‖Du‖₂² E` at interior samples.
    pub fit: GronwallFit,
}

pub fn hyper_e_monitor(traj: &TrajectoryRecord, eps_exp: f64) -> Result<HyperEReport> {
    let threshold = traj.params.threshold();
    if threshold <= 0.0 {
        return Err(Error::Parameter("the shell-energy monitor needs ν > 0".into()));
    }
    let times: Vec<f64> = traj.samples.iter().map(|s| s.t()).collect();
    let shell_energy =
        traj.samples.iter().map(|s| shell_energy_from_l2(&s.state.shell_l2, eps_exp)).collect::<Result<Vec<_>>>()?;
    let du_norm_sq: Vec<f64> = traj.samples.iter().map(|s| s.du_norm_sq).collect();
    let growth_factor: Vec<f64> = shell_energy.iter().map(|e| (2.0 + e / threshold).ln()).collect();
    let rhs: Vec<f64> = (0..times.len()).map(|i| growth_factor[i] * du_norm_sq[i] * shell_energy[i]).collect();
    let fit = fit_differential_inequality(&times, &shell_energy, &rhs)?;
    Ok(HyperEReport {
        eps_exp,
        max_shell_energy: shell_energy.iter().copied().fold(0.0, f64::max),
        du_integral: traj.integrate(|s| Some(s.du_norm_sq)).0,
        times,
        shell_energy,
        du_norm_sq,
        growth_factor,
        fit,
    })
}

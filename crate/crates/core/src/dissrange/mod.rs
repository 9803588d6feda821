//! Dissipation wavenumber, criterion function, intermittency, and the
//! trajectory-level monitors built on them.

mod monitors;
mod state;
mod trajectory;
mod turbulence;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use monitors::fit_differential_inequality;
pub use monitors::{besov_jump, gronwall_residual, jump_monitor, lemma_chain, GronwallFit, JumpReport, LemmaChain};
pub use state::{
    compute_f, compute_lambda, hyper_g, hyper_lambda, sandwich_check, shell_energy, shell_energy_from_l2,
    DissipationState, FValues, Sandwich,
};
pub use trajectory::{Sample, TrajectoryRecord};
pub use turbulence::{
    instantaneous_s, intermittency_exponent, kappa_d, mean_lambda_vs_kappa, turbulence_summary, Intermittency,
    KappaRatios, TurbulenceSummary,
};

/// Viscosity and the two absolute constants of the shell tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsParams {
    pub nu: f64,
    pub c0: f64,
    pub c1: f64,
}

impl DiagnosticsParams {
    /// `c1` defaults to `2 c0`.
    pub fn new(nu: f64, c0: f64) -> Result<Self> {
        Self::with_c1(nu, c0, 2.0 * c0)
    }

    pub fn with_c1(nu: f64, c0: f64, c1: f64) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Parameter(format!("viscosity must be finite and >= 0, got {nu}")));
        }
        if !(c0 > 0.0 && c1 > 0.0) {
            return Err(Error::Parameter(format!("c0 and c1 must be positive, got {c0}, {c1}")));
        }
        Ok(Self { nu, c0, c1 })
    }

    /// `c₀ν`, the shell-test threshold.
    pub fn threshold(&self) -> f64 {
        self.c0 * self.nu
    }
}

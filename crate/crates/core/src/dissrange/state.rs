use serde::Serialize;

use super::DiagnosticsParams;
use crate::error::Result;
use crate::lp::{lambda, FilterBank};
use crate::spectral::{inverse_transform, vorticity, SpectralField, VOLUME};

/// Per-time diagnostics. Shell arrays are indexed by `q + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DissipationState {
    pub t: f64,
    /// `Λ`, `f64::INFINITY` when infinite.
    pub lambda: f64,
    /// `Q` with `λ_Q = Λ`; `None` when `Λ = ∞`.
    pub q: Option<i32>,
    /// `sup_{q≤Q} λ_q ‖u_q‖_∞` (all resolved shells when `Λ = ∞`).
    pub f: f64,
    /// `sup_{q≤Q} ‖ω_q‖_∞`, filled by [`compute_f`].
    pub f_vort: Option<f64>,
    pub shell_linf: Vec<f64>,
    pub shell_l2: Vec<f64>,
    /// False when the shell test fails in the top resolved shell.
    pub resolved: bool,
    pub c0: f64,
    pub nu: f64,
}

impl DissipationState {
    pub fn q_max(&self) -> i32 {
        self.shell_linf.len() as i32 - 2
    }

    pub fn linf(&self, q: i32) -> f64 {
        self.shell_linf[(q + 1) as usize]
    }

    pub fn l2(&self, q: i32) -> f64 {
        self.shell_l2[(q + 1) as usize]
    }

    pub fn is_finite_lambda(&self) -> bool {
        self.lambda.is_finite()
    }

    /// `1 < Λ < ∞`.
    pub fn in_dissipative_set(&self) -> bool {
        self.lambda > 1.0 && self.lambda.is_finite()
    }

    /// Largest shell entering `f`.
    pub fn top_low_shell(&self) -> i32 {
        self.q.unwrap_or(self.q_max())
    }

    /// `‖u_Q‖_∞` and `‖u_Q‖₂ / (2π)^{3/2}` for finite `Λ`.
    pub fn top_norms(&self) -> Option<(f64, f64)> {
        self.q.map(|q| (self.linf(q), self.l2(q) / VOLUME.sqrt()))
    }

    fn recompute_f(&mut self) {
        self.f = (-1..=self.top_low_shell()).map(|q| lambda(q) * self.linf(q)).fold(0.0, f64::max);
    }
}

fn scan(shell_linf: &[f64], passes: impl Fn(i32, f64) -> bool) -> (f64, Option<i32>, bool) {
    let q_max = shell_linf.len() as i32 - 2;
    for p in (1..=q_max).rev() {
        if !passes(p, shell_linf[(p + 1) as usize]) {
            if p == q_max {
                return (f64::INFINITY, None, false);
            }
            return (lambda(p), Some(p), true);
        }
    }
    (1.0, Some(0), true)
}

fn build(u: &SpectralField, bank: &FilterBank, params: &DiagnosticsParams, passes: impl Fn(i32, f64) -> bool) -> DissipationState {
    let norms = bank.shell_norms(u);
    let (lambda, q, resolved) = if params.nu == 0.0 {
        (f64::INFINITY, None, true)
    } else {
        scan(&norms.linf, passes)
    };
    let mut state = DissipationState {
        t: 0.0,
        lambda,
        q,
        f: 0.0,
        f_vort: None,
        shell_linf: norms.linf,
        shell_l2: norms.l2,
        resolved,
        c0: params.c0,
        nu: params.nu,
    };
    state.recompute_f();
    state
}

/// `Λ = min{λ_q : λ_p^{−1}‖u_p‖_∞ < c₀ν for all resolved p > q, q ≥ 0}`.
pub fn compute_lambda(u: &SpectralField, bank: &FilterBank, params: &DiagnosticsParams) -> DissipationState {
    let threshold = params.threshold();
    build(u, bank, params, |p, linf| linf / lambda(p) < threshold)
}

/// `g(λ) = log^γ(2 + λ²)`; `γ = 1/4` is the standard choice.
pub fn hyper_g(r: f64, exponent: f64) -> f64 {
    (2.0 + r * r).ln().powf(exponent)
}

/// Hyperdissipative variant: `λ_p^{−3/2} g(λ_p)² ‖u_p‖_∞ ≤ c₀ν` for all `p > q`.
pub fn hyper_lambda(u: &SpectralField, bank: &FilterBank, params: &DiagnosticsParams, g_exponent: f64) -> DissipationState {
    let threshold = params.threshold();
    build(u, bank, params, |p, linf| {
        let l = lambda(p);
        l.powf(-1.5) * hyper_g(l, g_exponent).powi(2) * linf <= threshold
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FValues {
    pub f: f64,
    pub f_vort: f64,
    /// `f_vort / f`, zero when both vanish.
    pub ratio: f64,
}

/// Criterion function in velocity and vorticity form; also stores `f_vort` in `state`.
pub fn compute_f(u: &SpectralField, bank: &FilterBank, state: &mut DissipationState) -> FValues {
    state.recompute_f();
    let omega = vorticity(u);
    let mut f_vort: f64 = 0.0;
    for q in -1..=state.top_low_shell() {
        let wq = bank.shell_project(&omega, q).expect("in range");
        if !wq.is_zero() {
            f_vort = f_vort.max(inverse_transform(&wq).max_magnitude());
        }
    }
    state.f_vort = Some(f_vort);
    let ratio = if state.f > 0.0 { f_vort / state.f } else { 0.0 };
    FValues { f: state.f, f_vort, ratio }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Sandwich {
    NotApplicable,
    Checked { lower_ok: bool, upper_ratio: f64, upper_ok: bool },
}

/// `c₀νΛ² ≤ f` and `f / (Λ^{5/2} sup_{q≤Q} ‖u_q‖₂/(2π)^{3/2}) ≤ C_B`, for `1 < Λ < ∞`.
pub fn sandwich_check(state: &DissipationState, bernstein: f64) -> Sandwich {
    if !state.in_dissipative_set() {
        return Sandwich::NotApplicable;
    }
    let big_l = state.lambda;
    let lower_ok = state.f >= state.c0 * state.nu * big_l * big_l;
    let sup_l2 = (-1..=state.top_low_shell()).map(|q| state.l2(q)).fold(0.0, f64::max) / VOLUME.sqrt();
    let upper_ratio = state.f / (big_l.powf(2.5) * sup_l2);
    Sandwich::Checked { lower_ok, upper_ratio, upper_ok: upper_ratio <= bernstein }
}

/// `E = Σ_{q≥−1} λ_q^{1+ε} ‖u_q‖₂²` with `λ_{−1} := 1`.
pub fn shell_energy(u: &SpectralField, bank: &FilterBank, eps_exp: f64) -> Result<f64> {
    let l2: Vec<f64> = bank.shells().map(|q| bank.shell_project(u, q).map(|f| f.l2_norm())).collect::<Result<_>>()?;
    shell_energy_from_l2(&l2, eps_exp)
}

pub fn shell_energy_from_l2(shell_l2: &[f64], eps_exp: f64) -> Result<f64> {
    if !(eps_exp > 0.0 && eps_exp < 1.0) {
        return Err(crate::Error::Parameter(format!("shell-energy exponent must lie in (0,1), got {eps_exp}")));
    }
    Ok(shell_l2
        .iter()
        .enumerate()
        .map(|(i, v)| lambda(i as i32 - 1).powf(1.0 + eps_exp) * v * v)
        .sum())
}

//! Pseudo-spectral Navier–Stokes time stepping.

mod initial;
mod nonlinear;
mod operator;
mod stepper;

pub use initial::{plane_wave, single_shear, taylor_green, InitialCondition};
pub use nonlinear::nonlinear_term;
pub use operator::{DissipationOperator, OperatorKind};
pub use stepper::{StepOutput, Stepper};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{gradient_l2, Grid, SpectralField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub n: usize,
    pub operator: DissipationOperator,
    pub dt: f64,
    pub t_final: f64,
    /// Samples are taken every this many steps, plus at `t = 0` and `t_final`.
    pub sample_every: usize,
    pub cfl_limit: f64,
    pub initial: InitialCondition,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        Grid::new(self.n)?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Parameter(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::Parameter(format!("t_final must be non-negative, got {}", self.t_final)));
        }
        if self.sample_every == 0 {
            return Err(Error::Parameter("sample_every must be at least 1".into()));
        }
        if !(self.operator.nu >= 0.0 && self.operator.nu.is_finite()) {
            return Err(Error::Parameter(format!("nu must be non-negative, got {}", self.operator.nu)));
        }
        if !(self.cfl_limit > 0.0) {
            return Err(Error::Parameter("cfl_limit must be positive".into()));
        }
        Ok(())
    }
}

/// Scalar time series recorded at the sample times of a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    /// `‖∇u‖₂²`
    pub grad_l2: Vec<f64>,
    /// Dissipation accumulated since `t = 0`.
    pub dissipated: Vec<f64>,
    pub steps: usize,
    /// Why the run stopped before `t_final`, if it did.
    pub truncated: Option<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Runs the solver, handing every sampled state to `observe`.
///
/// A CFL violation halves the step until it is admissible; a blow-up or a step
/// collapse ends the run early with `truncated` set.
pub fn solve(
    config: &SolverConfig,
    mut observe: impl FnMut(f64, &SpectralField) -> Result<()>,
) -> Result<(Trajectory, SpectralField)> {
    config.validate()?;
    let grid = Grid::new(config.n)?;
    let u0 = crate::spectral::leray_project(&config.initial.generate(grid)?.dealiased());
    solve_from(config, u0, 0.0, &mut observe)
}

/// Like [`solve`], but starting from a given state at time `t0`.
pub fn solve_from(
    config: &SolverConfig,
    initial: SpectralField,
    t0: f64,
    mut observe: impl FnMut(f64, &SpectralField) -> Result<()>,
) -> Result<(Trajectory, SpectralField)> {
    config.validate()?;
    let grid = initial.grid();
    if grid.n() != config.n {
        return Err(Error::Parameter(format!("state has N = {}, config has N = {}", grid.n(), config.n)));
    }
    let stepper = Stepper::new(grid, config.operator, config.cfl_limit);
    let mut traj = Trajectory::default();
    let mut u = initial;
    let mut t = t0;
    let mut acc = 0.0;
    let t_end = t0 + config.t_final;
    let tol = 1e-12 * t_end.abs().max(1.0);

    let mut record = |traj: &mut Trajectory, t: f64, u: &SpectralField, acc: f64| -> Result<()> {
        traj.times.push(t);
        traj.energy.push(u.l2_norm_sq());
        traj.grad_l2.push(gradient_l2(u));
        traj.dissipated.push(acc);
        observe(t, u)
    };
    record(&mut traj, t, &u, acc)?;

    let mut dt = config.dt;
    'outer: while t_end - t > tol {
        let remaining = t_end - t;
        let (out, h) = loop {
            let h = dt.min(remaining);
            match stepper.step(&u, h) {
                Ok(out) => break (out, h),
                Err(Error::CflViolation { admissible_dt, .. }) => {
                    while dt > admissible_dt {
                        dt *= 0.5;
                    }
                    if dt < 1e-8 * config.dt {
                        traj.truncated = Some(format!("time step collapsed below {dt:.3e} at t = {t}"));
                        break 'outer;
                    }
                }
                Err(Error::BlowUp(msg)) => {
                    traj.truncated = Some(format!("blow-up at t = {t}: {msg}"));
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        };
        u = out.field;
        acc += out.dissipated;
        traj.steps += 1;
        t = if h == remaining { t_end } else { t + h };
        if traj.steps % config.sample_every == 0 || t_end - t <= tol {
            record(&mut traj, t, &u, acc)?;
        }
    }
    Ok((traj, u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBudget {
    /// Largest `|‖u(t)‖² + ∫ₛᵗ 2‖√ν D u‖² − ‖u(s)‖²| / ‖u(s)‖²` over sample pairs `s < t`.
    pub max_defect: f64,
    pub pairs: usize,
}

/// Energy balance using the dissipation integrated alongside the RK4 stages.
pub fn energy_budget(traj: &Trajectory) -> EnergyBudget {
    budget_from(&traj.energy, &traj.dissipated)
}

/// Energy balance with `∫ 2ν‖∇u‖²` taken by the trapezoid rule over the samples.
pub fn energy_budget_trapezoid(traj: &Trajectory, nu: f64) -> EnergyBudget {
    let mut acc = vec![0.0; traj.len()];
    for i in 1..traj.len() {
        let h = traj.times[i] - traj.times[i - 1];
        acc[i] = acc[i - 1] + nu * h * (traj.grad_l2[i] + traj.grad_l2[i - 1]);
    }
    budget_from(&traj.energy, &acc)
}

fn budget_from(energy: &[f64], acc: &[f64]) -> EnergyBudget {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for s in 0..energy.len() {
        if energy[s] == 0.0 {
            continue;
        }
        for t in s + 1..energy.len() {
            let defect = energy[t] + (acc[t] - acc[s]) - energy[s];
            worst = worst.max(defect.abs() / energy[s]);
            pairs += 1;
        }
    }
    EnergyBudget { max_defect: worst, pairs }
}

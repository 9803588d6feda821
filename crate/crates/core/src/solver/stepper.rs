use std::sync::Arc;

use num_complex::Complex64;

use super::nonlinear::evaluate;
use super::operator::DissipationOperator;
use crate::error::{Error, Result};
use crate::spectral::lattice::{retained, Retained};
use crate::spectral::{Grid, SpectralField, PERIOD, VOLUME};

/// Integrating-factor RK4 (Lawson form): the dissipative term is applied
/// exactly through `e^{−ν m(k)² h}`, the advection term by classical RK4.
#[derive(Clone)]
pub struct Stepper {
    grid: Grid,
    operator: DissipationOperator,
    cfl_limit: f64,
    modes: Arc<Retained>,
    /// Decay rate indexed by `|k|²`.
    symbol: Vec<f64>,
}

impl std::fmt::Debug for Stepper {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Stepper")
            .field("grid", &self.grid)
            .field("operator", &self.operator)
            .field("cfl_limit", &self.cfl_limit)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct StepOutput {
    pub field: SpectralField,
    /// `∫ 2 ‖√(νm²) u‖₂² dt` over the step, by RK4 on the stage states.
    pub dissipated: f64,
    /// `max |u|` at the start of the step.
    pub u_max: f64,
}

impl Stepper {
    pub fn new(grid: Grid, operator: DissipationOperator, cfl_limit: f64) -> Self {
        let modes = retained(grid);
        let top = modes.k2.iter().copied().max().unwrap_or(0) as usize;
        let symbol = (0..=top).map(|m| operator.symbol(m as f64)).collect();
        Self { grid, operator, cfl_limit, modes, symbol }
    }

    pub fn operator(&self) -> &DissipationOperator {
        &self.operator
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// `u_max h N / 2π`.
    pub fn cfl_number(&self, u_max: f64, dt: f64) -> f64 {
        u_max * dt * self.grid.n() as f64 / PERIOD
    }

    /// `2 Σ νm(k)² |û(k)|² (2π)³`, the instantaneous energy loss rate.
    pub fn dissipation_rate(&self, u: &SpectralField) -> f64 {
        let mut acc = 0.0;
        for (&idx, &m) in self.modes.idx.iter().zip(&self.modes.k2) {
            let s = self.symbol[m as usize];
            if s != 0.0 {
                acc += s * (0..3).map(|c| u.component(c)[idx].norm_sqr()).sum::<f64>();
            }
        }
        2.0 * acc * VOLUME
    }

    fn factors(&self, h: f64) -> Vec<f64> {
        self.symbol.iter().map(|s| (-s * h).exp()).collect()
    }

    /// `Σ_j w_j(|k|²) v_j` over the retained modes, each weight given as a table over `|k|²`;
    /// optionally Leray-projected.
    fn combine(&self, terms: &[(&SpectralField, &[f64])], project: bool) -> SpectralField {
        let len = self.grid.len();
        let mut coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); len]);
        for (j, (&idx, &m)) in self.modes.idx.iter().zip(&self.modes.k2).enumerate() {
            let mut v = [Complex64::default(); 3];
            for (field, w) in terms {
                let w = w[m as usize];
                for (c, vc) in v.iter_mut().enumerate() {
                    *vc += field.component(c)[idx] * w;
                }
            }
            if project && m > 0 {
                let k = &self.modes.k[j];
                let s = (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / m as f64;
                for (c, vc) in v.iter_mut().enumerate() {
                    *vc -= s * k[c];
                }
            }
            for (c, vc) in v.into_iter().enumerate() {
                coeffs[c][idx] = vc;
            }
        }
        SpectralField::from_coeffs(self.grid, coeffs, true).expect("lattice-sized coefficients")
    }

    pub fn step(&self, u: &SpectralField, h: f64) -> Result<StepOutput> {
        let first = evaluate(u)?;
        let cfl = self.cfl_number(first.u_max, h);
        if cfl > self.cfl_limit {
            let admissible_dt = self.cfl_limit * PERIOD / (first.u_max * self.grid.n() as f64);
            return Err(Error::CflViolation { cfl, admissible_dt });
        }
        let half = self.factors(0.5 * h);
        let full = self.factors(h);
        let table = |f: &dyn Fn(usize) -> f64| -> Vec<f64> { (0..self.symbol.len()).map(f).collect() };
        let half_h_half = table(&|m| 0.5 * h * half[m]);
        let h_half = table(&|m| h * half[m]);
        let h6_full = table(&|m| h / 6.0 * full[m]);
        let h3_half = table(&|m| h / 3.0 * half[m]);
        let half_h = vec![0.5 * h; self.symbol.len()];
        let h6 = vec![h / 6.0; self.symbol.len()];
        let k1 = first.term;

        let u2 = self.combine(&[(u, &half), (&k1, &half_h_half)], false);
        let k2 = evaluate(&u2)?.term;
        let u3 = self.combine(&[(u, &half), (&k2, &half_h)], false);
        let k3 = evaluate(&u3)?.term;
        let u4 = self.combine(&[(u, &full), (&k3, &h_half)], false);
        let k4 = evaluate(&u4)?.term;

        let next =
            self.combine(&[(u, &full), (&k1, &h6_full), (&k2, &h3_half), (&k3, &h3_half), (&k4, &h6)], true);
        if !next.is_finite() {
            return Err(Error::BlowUp("non-finite coefficients after step".into()));
        }
        let dissipated = h / 6.0
            * (self.dissipation_rate(u)
                + 2.0 * self.dissipation_rate(&u2)
                + 2.0 * self.dissipation_rate(&u3)
                + self.dissipation_rate(&u4));
        Ok(StepOutput { field: next, dissipated, u_max: first.u_max })
    }
}

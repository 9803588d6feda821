use crate::dissrange::{besov_jump, compute_f, compute_lambda, hyper_lambda, DiagnosticsParams, Sample, TrajectoryRecord};
use crate::lp::FilterBank;
use crate::norms::{besov_inf_from_shells, log_plus, sobolev_norm};
use crate::solver::{DissipationOperator, OperatorKind};
use crate::spectral::{gradient_l2, linf_norm, weighted_l2, Grid, SpectralField};

/// Turns solver states into [`Sample`]s, remembering the previous state for the jump monitor.
pub struct Sampler {
    bank: FilterBank,
    params: DiagnosticsParams,
    operator: DissipationOperator,
    sobolev_s: f64,
    previous: Option<SpectralField>,
}

impl Sampler {
    pub fn new(grid: Grid, params: DiagnosticsParams, operator: DissipationOperator, sobolev_s: f64) -> Self {
        Self { bank: FilterBank::new(grid), params, operator, sobolev_s, previous: None }
    }

    pub fn bank(&self) -> &FilterBank {
        &self.bank
    }

    pub fn empty_record(&self) -> TrajectoryRecord {
        TrajectoryRecord::new(self.params, self.sobolev_s)
    }

    pub fn sample(&mut self, t: f64, u: &SpectralField) -> Sample {
        let mut state = match self.operator.kind {
            OperatorKind::Hyper => hyper_lambda(u, &self.bank, &self.params, self.operator.g_exponent),
            _ => compute_lambda(u, &self.bank, &self.params),
        };
        state.t = t;
        compute_f(u, &self.bank, &mut state);
        let jump_b_m1 = self.previous.as_ref().map(|prev| besov_jump(prev, u, &self.bank));
        self.previous = Some(u.clone());
        let linf = linf_norm(u);
        let hs_norm = sobolev_norm(u, self.sobolev_s);
        let b0 = besov_inf_from_shells(&state.shell_linf, 0.0);
        let log_sobolev = (linf > 0.0 && b0 > 0.0).then(|| linf / (b0 * (1.0 + log_plus(hs_norm))));
        Sample {
            state,
            energy: u.l2_norm_sq(),
            grad_l2: gradient_l2(u),
            du_norm_sq: weighted_l2(u, |k2| self.operator.d_squared(k2)),
            hs_norm,
            linf,
            jump_b_m1,
            top_shell_fraction: self.bank.top_shell_fraction(u),
            log_sobolev,
        }
    }
}

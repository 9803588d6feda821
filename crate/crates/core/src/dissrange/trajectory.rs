use serde::Serialize;

use super::{DiagnosticsParams, DissipationState};

/// Everything the monitors need from one sampled instant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub state: DissipationState,
    /// `‖u‖₂²`
    pub energy: f64,
    /// `‖∇u‖₂²`
    pub grad_l2: f64,
    /// `‖Du‖₂²` for the run's dissipation operator (`D = ∇` for the standard one).
    pub du_norm_sq: f64,
    /// `‖u‖_{H^s}` at the record's Sobolev index.
    pub hs_norm: f64,
    /// Lattice `‖u‖_∞`.
    pub linf: f64,
    /// `‖u(t_i) − u(t_{i−1})‖_{B^{−1}_{∞,∞}}`, absent for the first sample.
    pub jump_b_m1: Option<f64>,
    pub top_shell_fraction: f64,
    pub log_sobolev: Option<f64>,
}

impl Sample {
    pub fn t(&self) -> f64 {
        self.state.t
    }
}

/// Time series of sampled diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    pub params: DiagnosticsParams,
    pub sobolev_s: f64,
    pub samples: Vec<Sample>,
    /// Reason the run stopped early, if it did.
    pub truncated: Option<String>,
}

impl TrajectoryRecord {
    pub fn new(params: DiagnosticsParams, sobolev_s: f64) -> Self {
        Self { params, sobolev_s, samples: Vec::new(), truncated: None }
    }

    pub fn push(&mut self, sample: Sample) {
        if let Some(last) = self.samples.last() {
            assert!(sample.t() > last.t(), "sample times must increase strictly");
        }
        self.samples.push(sample);
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Length of the sampled span.
    pub fn span(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.t() - a.t(),
            _ => 0.0,
        }
    }

    /// Trapezoidal `∫ g dt`; segments where either endpoint yields `None`
    /// are skipped and counted.
    pub fn integrate(&self, g: impl Fn(&Sample) -> Option<f64>) -> (f64, usize) {
        let mut acc = 0.0;
        let mut skipped = 0;
        for w in self.samples.windows(2) {
            match (g(&w[0]), g(&w[1])) {
                (Some(a), Some(b)) => acc += 0.5 * (a + b) * (w[1].t() - w[0].t()),
                _ => skipped += 1,
            }
        }
        (acc, skipped)
    }

    /// Trapezoidal `∫_U g dt` over `U = {1 < Λ < ∞}`: the integrand is
    /// masked to zero outside `U`, which places the indicator's crossing at
    /// the midpoint of each mixed segment.
    pub fn integrate_over_u(&self, g: impl Fn(&Sample) -> f64) -> f64 {
        self.integrate(|s| Some(if s.state.in_dissipative_set() { g(s) } else { 0.0 })).0
    }

    /// `⟨g⟩_U = (1/T) ∫_U g dt`; a single sample is treated as a point mass.
    pub fn average_over_u(&self, g: impl Fn(&Sample) -> f64) -> f64 {
        if self.samples.len() == 1 {
            let s = &self.samples[0];
            return if s.state.in_dissipative_set() { g(s) } else { 0.0 };
        }
        self.integrate_over_u(g) / self.span()
    }

    /// `⟨g⟩ = (1/T) ∫ g dt` over segments where `g` is defined.
    pub fn average(&self, g: impl Fn(&Sample) -> Option<f64>) -> (f64, usize) {
        if self.samples.len() == 1 {
            return g(&self.samples[0]).map_or((0.0, 1), |v| (v, 0));
        }
        let (v, skipped) = self.integrate(g);
        (v / self.span(), skipped)
    }

    pub fn has_dissipative_samples(&self) -> bool {
        self.samples.iter().any(|s| s.state.in_dissipative_set())
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::RunConfig;
use crate::dissrange::{instantaneous_s, TrajectoryRecord};

pub const CSV_HEADER: &str = "t,energy,grad_l2,Lambda,Q,f,f_vort,s_inst,resolved";

fn real(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// One row per sample; `inf` for infinite `Λ`, empty fields where `Q`,
/// `f_vort`, or `s_inst` are undefined.
pub fn trajectory_csv(traj: &TrajectoryRecord) -> String {
    let mut out = String::with_capacity(160 * (traj.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &traj.samples {
        let st = &s.state;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            real(s.t()),
            real(s.energy),
            real(s.grad_l2),
            real(st.lambda),
            st.q.map(|q| q.to_string()).unwrap_or_default(),
            real(st.f),
            st.f_vort.map(real).unwrap_or_default(),
            instantaneous_s(st).map(real).unwrap_or_default(),
            st.resolved,
        );
    }
    if let Some(reason) = &traj.truncated {
        let _ = writeln!(out, "# truncated: {}", reason.replace('\n', " "));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorEntry {
    pub value: Option<serde_json::Value>,
    pub error: Option<String>,
}

impl MonitorEntry {
    pub fn from_result<T: Serialize>(r: crate::Result<T>) -> Self {
        match r {
            Ok(v) => Self { value: Some(serde_json::to_value(v).expect("monitor values serialize")), error: None },
            Err(e) => Self { value: None, error: Some(e.to_string()) },
        }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MeasuredConstants {
    /// Bernstein constant `C_B` measured on this grid's shells.
    pub bernstein: f64,
    /// Largest log-Sobolev ratio over the samples.
    pub log_sobolev: Option<f64>,
    pub gronwall: Option<f64>,
    pub hyper_e: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportFlags {
    pub truncated: Option<String>,
    pub unresolved_samples: usize,
    pub under_resolved: bool,
    /// Samples with `1 < Λ < ∞` where the lower sandwich bound failed.
    pub sandwich_lower_violations: usize,
    /// Samples with `1 < Λ < ∞` where the upper ratio exceeded `C_B`.
    pub sandwich_upper_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorReport {
    pub config: RunConfig,
    pub samples: usize,
    pub steps: usize,
    pub final_time: f64,
    pub constants: MeasuredConstants,
    pub monitors: BTreeMap<String, MonitorEntry>,
    pub flags: ReportFlags,
}

impl MonitorReport {
    pub fn monitor(&self, name: &str) -> Option<&MonitorEntry> {
        self.monitors.get(name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissrange::DiagnosticsParams;
    use crate::harness::Sampler;
    use crate::solver::{taylor_green, DissipationOperator};
    use crate::spectral::Grid;

    #[test]
    fn csv_layout() {
        let g = Grid::new(16).unwrap();
        let p = DiagnosticsParams::new(0.0, 1.0).unwrap();
        let mut sampler = Sampler::new(g, p, DissipationOperator::inviscid(), 3.0);
        let mut rec = sampler.empty_record();
        rec.push(sampler.sample(0.0, &taylor_green(g, 1.0)));
        rec.truncated = Some("blow-up".into());
        let csv = trajectory_csv(&rec);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        let cols: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cols.len(), 9);
        assert_eq!(cols[0], "0.0000000000000000e0");
        assert_eq!(cols[3], "inf");
        assert_eq!(cols[4], "");
        assert_eq!(cols[7], "");
        assert_eq!(cols[8], "true");
        assert_eq!(lines[2], "# truncated: blow-up");
        let e: f64 = cols[1].parse().unwrap();
        assert_eq!(e, rec.samples[0].energy);
    }
}

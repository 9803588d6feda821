//! Run orchestration, trajectory-level monitors, and report files.

mod config;
mod monitors;
mod report;
mod sampler;
pub mod selftest;

pub use config::{InitialKind, RunConfig, ALL_MONITORS, ENV_PREFIX};
pub use monitors::{bkm_integral, hyper_e_monitor, lambda_lp_integral, lps_norm, BkmIntegral, HyperEReport, LambdaIntegral};
pub use report::{trajectory_csv, MeasuredConstants, MonitorEntry, MonitorReport, ReportFlags, CSV_HEADER};
pub use sampler::Sampler;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::dissrange::{
    gronwall_residual, intermittency_exponent, jump_monitor, lemma_chain, mean_lambda_vs_kappa, sandwich_check,
    turbulence_summary, Sandwich, TrajectoryRecord,
};
use crate::error::{Error, Result};
use crate::lp::{chi, measure_bernstein_constant, phi, FilterBank};
use crate::solver::{self, energy_budget, OperatorKind, Trajectory};
use crate::spectral::checkpoint;
use crate::spectral::{Grid, SpectralField};

/// Everything a run produced, in memory.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: MonitorReport,
    pub record: TrajectoryRecord,
    pub solver: Trajectory,
    pub final_field: SpectralField,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrittenFiles {
    pub csv: PathBuf,
    pub json: PathBuf,
    pub checkpoints: Vec<PathBuf>,
}

fn context(what: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::Context { context: what.to_string(), source: Box::new(e) }
}

/// Seeds for the Bernstein constant; fixed so reports are reproducible.
fn bernstein_seeds(count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| 0x5eed_0000 + i).collect()
}

/// Solves, samples, and evaluates the requested monitors, without touching the filesystem.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    execute_with(config, |_, _, _| Ok(()))
}

/// Like [`execute`], also calling `on_sample(index, t, u)` for every sampled state.
pub fn execute_with(
    config: &RunConfig,
    mut on_sample: impl FnMut(usize, f64, &SpectralField) -> Result<()>,
) -> Result<RunOutput> {
    config.validate()?;
    let params = config.diagnostics_params()?;
    let grid = Grid::new(config.n)?;
    let mut sampler = Sampler::new(grid, params, config.operator(), config.sobolev_s);
    let mut record = sampler.empty_record();
    let (solver_traj, final_field) = solver::solve(&config.solver_config(), |t, u| {
        let index = record.len();
        record.push(sampler.sample(t, u));
        on_sample(index, t, u)
    })
    .map_err(context("solve"))?;
    record.truncated = solver_traj.truncated.clone();
    let mut report = evaluate(config, &record, sampler.bank(), solver_traj.steps);
    report.monitors.insert("energy_budget".into(), MonitorEntry::from_result(Ok(energy_budget(&solver_traj))));
    let csv = trajectory_csv(&record);
    Ok(RunOutput { report, record, solver: solver_traj, final_field, csv })
}

/// Evaluates the configured monitors on a sampled trajectory.
pub fn evaluate(config: &RunConfig, record: &TrajectoryRecord, bank: &FilterBank, steps: usize) -> MonitorReport {
    let bernstein = measure_bernstein_constant(bank, &bernstein_seeds(config.bernstein_fields));
    let mut monitors = BTreeMap::new();
    let mut constants = MeasuredConstants {
        bernstein,
        log_sobolev: record.samples.iter().filter_map(|s| s.log_sobolev).reduce(f64::max),
        ..MeasuredConstants::default()
    };
    let mut flags = ReportFlags {
        truncated: record.truncated.clone(),
        unresolved_samples: record.samples.iter().filter(|s| !s.state.resolved).count(),
        ..ReportFlags::default()
    };
    flags.under_resolved = flags.unresolved_samples > 0;
    for s in &record.samples {
        if let Sandwich::Checked { lower_ok, upper_ok, .. } = sandwich_check(&s.state, bernstein) {
            flags.sandwich_lower_violations += usize::from(!lower_ok);
            flags.sandwich_upper_violations += usize::from(!upper_ok);
        }
    }

    if config.wants("bkm_integral") {
        monitors.insert("bkm_integral".into(), MonitorEntry::from_result(Ok(bkm_integral(record))));
    }
    if config.wants("lambda_lp") {
        for &p in &config.p_list {
            monitors.insert(format!("lambda_lp[p={p}]"), MonitorEntry::from_result(lambda_lp_integral(record, p)));
        }
    }
    if config.wants("lps_norm") {
        for &r in &config.r_list {
            monitors.insert(format!("lps_norm[r={r}]"), MonitorEntry::from_result(lps_norm(record, r)));
        }
    }
    if config.wants("jump") {
        monitors.insert("jump".into(), MonitorEntry::from_result(jump_monitor(record, &record.params)));
    }
    if config.wants("gronwall") {
        let fit = gronwall_residual(record, config.sobolev_s);
        constants.gronwall = fit.as_ref().ok().map(|f| f.constant);
        monitors.insert("gronwall".into(), MonitorEntry::from_result(fit));
    }
    if config.wants("turbulence_summary") {
        monitors.insert("turbulence_summary".into(), MonitorEntry::from_result(turbulence_summary(record)));
        monitors.insert("intermittency".into(), MonitorEntry::from_result(intermittency_exponent(record)));
        monitors.insert("kappa_ratios".into(), MonitorEntry::from_result(mean_lambda_vs_kappa(record)));
    }
    if config.wants("hyper_e") && config.operator == OperatorKind::Hyper {
        let h = hyper_e_monitor(record, config.eps_exp);
        constants.hyper_e = h.as_ref().ok().map(|h| h.fit.constant);
        monitors.insert("hyper_e".into(), MonitorEntry::from_result(h));
    }
    if config.wants("lemma_chain") && record.params.nu > 0.0 {
        monitors.insert("lemma_chain".into(), MonitorEntry::from_result(Ok(lemma_chain(record, bernstein))));
    }

    MonitorReport {
        config: config.clone(),
        samples: record.len(),
        steps,
        final_time: record.samples.last().map_or(0.0, |s| s.t()),
        constants,
        monitors,
        flags,
    }
}

/// Runs and writes the CSV, the JSON report, and any checkpoints under `output_dir`.
pub fn run(config: &RunConfig) -> Result<(RunOutput, WrittenFiles)> {
    std::fs::create_dir_all(&config.output_dir)?;
    let mut checkpoints = Vec::new();
    let ckpt_dir = config.checkpoint_dir();
    let nu = config.diagnostics_params()?.nu;
    let result = execute_with(config, |index, t, u| {
        if config.checkpoint_every > 0 && index % config.checkpoint_every == 0 {
            std::fs::create_dir_all(&ckpt_dir)?;
            let path = ckpt_dir.join(format!("{:06}.ckpt", index));
            checkpoint::save(&path, t, nu, u)?;
            checkpoints.push(path);
        }
        Ok(())
    });
    let output = match result {
        Ok(out) => out,
        Err(e) => {
            let marker = format!("{CSV_HEADER}\n# failed: {}\n", e.to_string().replace('\n', " "));
            std::fs::write(config.csv_path(), marker)?;
            return Err(e);
        }
    };
    std::fs::write(config.csv_path(), &output.csv)?;
    std::fs::write(config.json_path(), output.report.to_json())?;
    let files = WrittenFiles { csv: config.csv_path(), json: config.json_path(), checkpoints };
    Ok((output, files))
}

/// Rebuilds a sampled trajectory from checkpoint files (sorted by time) and evaluates monitors.
pub fn analyze(paths: &[impl AsRef<Path>], config: &RunConfig) -> Result<(MonitorReport, TrajectoryRecord)> {
    if paths.is_empty() {
        return Err(Error::NoData("no checkpoints given".into()));
    }
    let mut loaded = paths
        .iter()
        .map(|p| {
            checkpoint::load(p.as_ref())
                .map_err(|e| Error::Context { context: p.as_ref().display().to_string(), source: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;
    loaded.sort_by(|a, b| a.time.total_cmp(&b.time));
    let grid = loaded[0].field.grid();
    let nu = loaded[0].nu;
    if loaded.iter().any(|c| c.field.grid() != grid || c.nu != nu) {
        return Err(Error::Parameter("checkpoints disagree on grid size or viscosity".into()));
    }
    if loaded.windows(2).any(|w| w[0].time == w[1].time) {
        return Err(Error::Parameter("two checkpoints share a time".into()));
    }
    let config = RunConfig { n: grid.n(), nu, ..config.clone() };
    let params = config.diagnostics_params()?;
    let mut sampler = Sampler::new(grid, params, config.operator(), config.sobolev_s);
    let mut record = sampler.empty_record();
    for c in &loaded {
        record.push(sampler.sample(c.time, &c.field));
    }
    let report = evaluate(&config, &record, sampler.bank(), 0);
    Ok((report, record))
}

/// Radial profiles of `χ` and every `φ_q` on the lattice radii `|k| ≤ N/3`, as CSV.
pub fn filter_table(grid: Grid) -> String {
    let bank = FilterBank::new(grid);
    let mut out = String::from("k2,k,chi");
    for q in bank.shells() {
        let _ = write!(out, ",phi_{q}");
    }
    out.push_str(",sum\n");
    let km = grid.k_max() as u32;
    let mut radii: Vec<u32> = (0..=km * km).filter(|m| is_sum_of_three_squares(*m)).collect();
    radii.dedup();
    for m in radii {
        let r = (m as f64).sqrt();
        let _ = write!(out, "{m},{r:.16e},{:.16e}", chi(r));
        let mut sum = 0.0;
        for q in bank.shells() {
            let v = if q == -1 { chi(r) } else { phi(q, r) };
            sum += v;
            let _ = write!(out, ",{v:.16e}");
        }
        let _ = writeln!(out, ",{sum:.16e}");
    }
    out
}

fn is_sum_of_three_squares(m: u32) -> bool {
    // Legendre: m is not of the form 4^a (8b + 7)
    let mut m = m;
    while m != 0 && m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

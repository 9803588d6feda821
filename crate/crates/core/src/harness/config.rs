use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dissrange::DiagnosticsParams;
use crate::error::{Error, Result};
use crate::solver::{DissipationOperator, InitialCondition, OperatorKind, SolverConfig};

pub const ENV_PREFIX: &str = "DISSRANGE_";

pub const ALL_MONITORS: [&str; 8] =
    ["bkm_integral", "lambda_lp", "lps_norm", "jump", "gronwall", "turbulence_summary", "hyper_e", "lemma_chain"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    TaylorGreen,
    SingleShear,
    PlaneWave,
    RandomBand,
}

/// Flat run configuration. Every key has a default, so an empty file is valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Grid points per side; a power of two, at least 16.
    pub n: usize,
    pub nu: f64,
    pub operator: OperatorKind,
    /// `γ` in `g(r) = log^γ(2 + r²)` for the hyper operator.
    pub g_exponent: f64,
    /// Largest step; halved automatically when the CFL limit is hit.
    pub dt: f64,
    pub t_final: f64,
    pub sample_every: usize,
    pub cfl_limit: f64,

    pub initial: InitialKind,
    pub amplitude: f64,
    /// Wavenumber of the shear and plane-wave initial data.
    pub wavenumber: i64,
    pub k_lo: f64,
    pub k_hi: f64,
    pub slope: f64,
    pub rms: f64,
    pub seed: u64,

    pub c0: f64,
    /// Jump-condition constant; `2 c0` when absent.
    pub c1: Option<f64>,
    /// Sobolev index of the Grönwall monitor and the log-Sobolev ratio.
    pub sobolev_s: f64,
    /// `ε` in the shell energy `E = Σ λ_q^{1+ε} ‖u_q‖₂²`.
    pub eps_exp: f64,
    /// Number of random fields per shell behind the measured Bernstein constant.
    pub bernstein_fields: usize,

    pub monitors: Vec<String>,
    pub p_list: Vec<f64>,
    pub r_list: Vec<f64>,

    pub output_dir: PathBuf,
    pub run_name: String,
    /// Write a checkpoint at every this many samples; 0 disables checkpoints.
    pub checkpoint_every: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 64,
            nu: 0.01,
            operator: OperatorKind::Standard,
            g_exponent: 0.25,
            dt: 0.04,
            t_final: 5.0,
            sample_every: 10,
            cfl_limit: 0.5,
            initial: InitialKind::TaylorGreen,
            amplitude: 1.0,
            wavenumber: 1,
            k_lo: 1.0,
            k_hi: 8.0,
            slope: -5.0 / 3.0,
            rms: 1.0,
            seed: 0,
            c0: 1.0,
            c1: None,
            sobolev_s: 3.0,
            eps_exp: 0.5,
            bernstein_fields: 8,
            monitors: ALL_MONITORS.iter().map(|s| s.to_string()).collect(),
            p_list: vec![1.0, 2.0, 2.5],
            r_list: vec![2.0],
            output_dir: PathBuf::from("out"),
            run_name: "run".into(),
            checkpoint_every: 0,
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Self::from_sources(text, std::iter::empty())
    }

    /// Reads a config file and applies `DISSRANGE_*` overrides from the process environment.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_sources(&text, std::env::vars())
    }

    /// Parses `text`, then applies overrides from `env`; a variable `DISSRANGE_NU=0.02`
    /// sets key `nu`. Values are read as TOML values, falling back to plain strings.
    pub fn from_sources(text: &str, env: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let mut table: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        for (key, value) in env {
            let Some(name) = key.strip_prefix(ENV_PREFIX) else { continue };
            let name = name.to_ascii_lowercase();
            let parsed = format!("v = {value}")
                .parse::<toml::Table>()
                .ok()
                .and_then(|mut t| t.remove("v"))
                .unwrap_or(toml::Value::String(value));
            table.insert(name, parsed);
        }
        let config: RunConfig = table.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.solver_config().validate()?;
        self.diagnostics_params()?;
        if !(self.sobolev_s > 1.5) {
            return Err(Error::Config(format!("sobolev_s must exceed 3/2, got {}", self.sobolev_s)));
        }
        if !(self.eps_exp > 0.0 && self.eps_exp < 1.0) {
            return Err(Error::Config(format!("eps_exp must lie in (0,1), got {}", self.eps_exp)));
        }
        for m in &self.monitors {
            if !ALL_MONITORS.contains(&m.as_str()) {
                return Err(Error::Config(format!("unknown monitor `{m}`")));
            }
        }
        for &r in &self.r_list {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Config(format!("r must be finite and positive, got {r}")));
            }
        }
        for &p in &self.p_list {
            let allowed = [1.0, 2.0, 2.5].contains(&p) || self.r_list.iter().any(|r| p == 1.0 + r);
            if !allowed {
                return Err(Error::Config(format!("p = {p} is not one of 1, 2, 5/2 or 1 + r for r in r_list")));
            }
        }
        if self.bernstein_fields == 0 {
            return Err(Error::Config("bernstein_fields must be at least 1".into()));
        }
        if self.run_name.is_empty() || self.run_name.contains(['/', '\\']) {
            return Err(Error::Config(format!("invalid run_name `{}`", self.run_name)));
        }
        Ok(())
    }

    pub fn wants(&self, monitor: &str) -> bool {
        self.monitors.iter().any(|m| m == monitor)
    }

    pub fn operator(&self) -> DissipationOperator {
        DissipationOperator { kind: self.operator, nu: self.nu, g_exponent: self.g_exponent }
    }

    pub fn initial_condition(&self) -> InitialCondition {
        match self.initial {
            InitialKind::TaylorGreen => InitialCondition::TaylorGreen { amplitude: self.amplitude },
            InitialKind::SingleShear => {
                InitialCondition::SingleShear { amplitude: self.amplitude, wavenumber: self.wavenumber }
            }
            InitialKind::PlaneWave => InitialCondition::PlaneWave { amplitude: self.amplitude, wavenumber: self.wavenumber },
            InitialKind::RandomBand => InitialCondition::RandomBand {
                k_lo: self.k_lo,
                k_hi: self.k_hi,
                slope: self.slope,
                rms: self.rms,
                seed: self.seed,
            },
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            n: self.n,
            operator: self.operator(),
            dt: self.dt,
            t_final: self.t_final,
            sample_every: self.sample_every,
            cfl_limit: self.cfl_limit,
            initial: self.initial_condition(),
        }
    }

    pub fn diagnostics_params(&self) -> Result<DiagnosticsParams> {
        let nu = if self.operator == OperatorKind::None { 0.0 } else { self.nu };
        match self.c1 {
            Some(c1) => DiagnosticsParams::with_c1(nu, self.c0, c1),
            None => DiagnosticsParams::new(nu, self.c0),
        }
    }

    pub fn csv_path(&self) -> PathBuf {
        self.output_dir.join(format!("{}.csv", self.run_name))
    }

    pub fn json_path(&self) -> PathBuf {
        self.output_dir.join(format!("{}.json", self.run_name))
    }

    pub fn checkpoint_dir(&self) -> PathBuf {
        self.output_dir.join(format!("{}-checkpoints", self.run_name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = RunConfig::from_toml_str("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.diagnostics_params().unwrap().c1, 2.0);
    }

    #[test]
    fn roundtrip_through_toml() {
        let c = RunConfig { nu: 0.02, c1: Some(3.0), ..RunConfig::default() };
        assert_eq!(RunConfig::from_toml_str(&c.to_toml_string()).unwrap(), c);
    }

    #[test]
    fn environment_overrides_file() {
        let env = vec![
            ("DISSRANGE_NU".to_string(), "0.005".to_string()),
            ("DISSRANGE_INITIAL".to_string(), "random_band".to_string()),
            ("DISSRANGE_P_LIST".to_string(), "[1.0, 3.0]".to_string()),
            ("OTHER_NU".to_string(), "7".to_string()),
        ];
        let c = RunConfig::from_sources("nu = 0.1\nr_list = [2.0]\n", env).unwrap();
        assert_eq!(c.nu, 0.005);
        assert_eq!(c.initial, InitialKind::RandomBand);
        assert_eq!(c.p_list, vec![1.0, 3.0]);
    }

    #[test]
    fn rejects_bad_keys_and_values() {
        assert!(matches!(RunConfig::from_toml_str("viscosity = 1.0"), Err(Error::Config(_))));
        assert!(RunConfig::from_toml_str("p_list = [3.5]").is_err());
        assert!(RunConfig::from_toml_str("p_list = [3.5]\nr_list = [2.5]").is_ok());
        assert!(RunConfig::from_toml_str("r_list = [-1.0]").is_err());
        assert!(RunConfig::from_toml_str("monitors = [\"bogus\"]").is_err());
        assert!(RunConfig::from_toml_str("n = 48").is_err());
        assert!(RunConfig::from_toml_str("eps_exp = 1.0").is_err());
    }

    #[test]
    fn inviscid_operator_zeroes_viscosity() {
        let c = RunConfig { operator: OperatorKind::None, ..RunConfig::default() };
        assert_eq!(c.diagnostics_params().unwrap().nu, 0.0);
        assert_eq!(c.operator().symbol(4.0), 0.0);
    }
}

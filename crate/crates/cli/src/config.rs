//! JSON run configuration. One document per run; command-line flags
//! (--out, --workers, --format) override the matching top-level fields.

use crate::error::CliError;
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Omega,
    BAmp,
    Eta,
    J,
    DeltaPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub steps: u32,
    #[serde(default)]
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.min < self.max) {
            return Err(CliError::Config(format!(
                "sweep: min ({}) must be < max ({})",
                self.min, self.max
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Config("sweep: steps must be >= 2".into()));
        }
        if self.scale == SweepScale::Log && self.min <= 0.0 {
            return Err(CliError::Config("sweep: log scale requires min > 0".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps as usize;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.min + t * (self.max - self.min),
                    SweepScale::Log => {
                        (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

fn default_eps() -> f64 {
    0.5
}
fn default_tau() -> f64 {
    500.0
}
fn default_n_max() -> u32 {
    10
}
fn default_n_sites() -> u32 {
    200
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwolevelConfig {
    pub delta: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// exactly one of eta / a_amp may be set; eta keeps Ã = η·ω̃ across
    /// omega sweeps
    pub eta: Option<f64>,
    pub a_amp: Option<f64>,
    #[serde(default)]
    pub b_amp: f64,
    pub omega: Option<f64>,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    pub sweep: SweepSpec,
}

impl TwolevelConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.sweep.validate()?;
        if self.eta.is_some() && self.a_amp.is_some() {
            return Err(CliError::Config("twolevel: set eta or a_amp, not both".into()));
        }
        match self.sweep.axis {
            SweepAxis::Omega => {}
            SweepAxis::BAmp | SweepAxis::Eta => {
                if self.omega.is_none() {
                    return Err(CliError::Config(
                        "twolevel: omega required unless it is the sweep axis".into(),
                    ));
                }
            }
            other => {
                return Err(CliError::Config(format!(
                    "twolevel: unsupported sweep axis {other:?} (use omega, b_amp or eta)"
                )));
            }
        }
        if self.sweep.axis == SweepAxis::Eta && (self.eta.is_some() || self.a_amp.is_some()) {
            return Err(CliError::Config(
                "twolevel: eta is the sweep axis and must not be fixed".into(),
            ));
        }
        if self.tau <= 0.0 {
            return Err(CliError::Config("twolevel: tau must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsingDrive {
    Diag,
    Offdiag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsingOutput {
    /// density columns over a coupling sweep
    Density,
    /// mode-resolved dump at the fixed parameter point
    Modes,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsingConfig {
    pub drive: IsingDrive,
    pub output: IsingOutput,
    /// diag drive: J̃ (fixed point) and η
    pub j: Option<f64>,
    #[serde(default)]
    pub eta: f64,
    /// offdiag drive: Δ̃′ (fixed point) and B̃′
    pub delta_prime: Option<f64>,
    #[serde(default)]
    pub b_prime: f64,
    pub omega: f64,
    #[serde(default = "default_eps")]
    pub eps_prime: f64,
    #[serde(default = "default_n_sites")]
    pub n_sites: u32,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    pub sweep: Option<SweepSpec>,
}

impl IsingConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        match self.output {
            IsingOutput::Density => {
                let sweep = self.sweep.as_ref().ok_or_else(|| {
                    CliError::Config("ising: density output requires a sweep".into())
                })?;
                sweep.validate()?;
                let want = match self.drive {
                    IsingDrive::Diag => SweepAxis::J,
                    IsingDrive::Offdiag => SweepAxis::DeltaPrime,
                };
                if sweep.axis != want {
                    return Err(CliError::Config(format!(
                        "ising: sweep axis must be {want:?} for this drive"
                    )));
                }
            }
            IsingOutput::Modes => {
                let fixed = match self.drive {
                    IsingDrive::Diag => self.j.is_some(),
                    IsingDrive::Offdiag => self.delta_prime.is_some(),
                };
                if !fixed {
                    return Err(CliError::Config(
                        "ising: mode dump needs the fixed coupling (j or delta_prime)".into(),
                    ));
                }
                if self.sweep.is_some() {
                    return Err(CliError::Config(
                        "ising: mode dump takes no sweep".into(),
                    ));
                }
            }
        }
        if self.tau <= 0.0 {
            return Err(CliError::Config("ising: tau must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfpScanConfig {
    /// either a fixed omega or an omega sweep
    pub omega: Option<f64>,
    pub omega_sweep: Option<SweepSpec>,
    pub eta: Vec<f64>,
    pub j: Vec<f64>,
    #[serde(default = "default_eps")]
    pub eps_prime: f64,
}

impl NfpScanConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        match (&self.omega, &self.omega_sweep) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(CliError::Config(
                    "nfp-scan: set exactly one of omega / omega_sweep".into(),
                ));
            }
            (None, Some(s)) => {
                s.validate()?;
                if s.axis != SweepAxis::Omega {
                    return Err(CliError::Config("nfp-scan: sweep axis must be omega".into()));
                }
            }
            (Some(w), None) => {
                if *w <= 0.0 {
                    return Err(CliError::Config("nfp-scan: omega must be > 0".into()));
                }
            }
        }
        if self.eta.is_empty() || self.j.is_empty() {
            return Err(CliError::Config("nfp-scan: eta and j lists must be non-empty".into()));
        }
        Ok(())
    }

    pub fn omegas(&self) -> Vec<f64> {
        match (&self.omega, &self.omega_sweep) {
            (Some(w), _) => vec![*w],
            (None, Some(s)) => s.values(),
            (None, None) => unreachable!("validated"),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub format: Option<OutputFormat>,
    pub twolevel: Option<TwolevelConfig>,
    pub ising: Option<IsingConfig>,
    pub nfp_scan: Option<NfpScanConfig>,
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> Result<(Self, serde_json::Value), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let raw: serde_json::Value = serde_json::from_str(&text)?;
        let cfg: ConfigFile = serde_json::from_value(raw.clone())?;
        Ok((cfg, raw))
    }
}

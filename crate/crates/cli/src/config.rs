//! Run configuration: JSON file, command-line overrides, defaults and validation.

use std::path::{Path, PathBuf};

use dtqw_core::geometry::{GwParams, Waveform};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "DTQW_OUT_DIR";
/// Output directory when neither flag, config nor environment provide one.
pub const DEFAULT_OUT_DIR: &str = "dtqw-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Evolve,
    Spectrum,
    RhoMax,
    UnaffectedModes,
    Interference,
    DeltamSweep,
    ContinuumCheck,
    GwAngles,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Evolve,
        Experiment::Spectrum,
        Experiment::RhoMax,
        Experiment::UnaffectedModes,
        Experiment::Interference,
        Experiment::DeltamSweep,
        Experiment::ContinuumCheck,
        Experiment::GwAngles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Evolve => "evolve",
            Experiment::Spectrum => "spectrum",
            Experiment::RhoMax => "rho-max",
            Experiment::UnaffectedModes => "unaffected-modes",
            Experiment::Interference => "interference",
            Experiment::DeltamSweep => "deltam-sweep",
            Experiment::ContinuumCheck => "continuum-check",
            Experiment::GwAngles => "gw-angles",
        }
    }

    pub fn parse(name: &str) -> Result<Self, CliError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == name)
            .ok_or_else(|| {
                let known: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
                CliError::Config(format!(
                    "experiment: unknown value {name:?}, expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WaveformSpec {
    Constant {
        amplitude: f64,
    },
    Sine {
        amplitude: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
    },
}

impl WaveformSpec {
    pub fn to_waveform(self) -> Waveform {
        match self {
            WaveformSpec::Constant { amplitude } => Waveform::Constant(amplitude),
            WaveformSpec::Sine { amplitude, omega, phase } => Waveform::Sine { amplitude, omega, phase },
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            WaveformSpec::Constant { amplitude } => amplitude.is_finite(),
            WaveformSpec::Sine { amplitude, omega, phase } => {
                amplitude.is_finite() && omega.is_finite() && phase.is_finite()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub epsilon: f64,
    pub mass: f64,
    pub xi: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params { epsilon: 1.0, mass: 0.0, xi: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GwSpec {
    pub f: WaveformSpec,
    pub g: WaveformSpec,
    pub k: f64,
    pub k_prime: f64,
}

impl Default for GwSpec {
    fn default() -> Self {
        GwSpec {
            f: WaveformSpec::Constant { amplitude: 0.0 },
            g: WaveformSpec::Constant { amplitude: 1.0 },
            k: 0.0,
            k_prime: 0.0,
        }
    }
}

/// Fully resolved configuration. Serialised verbatim into the manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub lattice: [usize; 2],
    pub params: Params,
    pub gw: GwSpec,
    pub resolution: usize,
    /// Walk steps for `evolve` and samples for `gw-angles`.
    pub steps: usize,
    /// Interference wavenumber; snapped to the lattice. Defaults to the `Δ_M` peak.
    pub q: Option<f64>,
    #[serde(skip)]
    pub out: PathBuf,
    /// 0 lets the thread pool choose.
    #[serde(skip)]
    pub threads: usize,
}

impl RunConfig {
    pub fn gw_params(&self) -> GwParams {
        GwParams {
            xi: self.params.xi,
            f: self.gw.f.to_waveform(),
            g: self.gw.g.to_waveform(),
            k: self.gw.k,
            k_prime: self.gw.k_prime,
        }
    }

    /// Times `T_j = jε` at which the wave angles are evaluated by a run.
    pub fn sample_times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps + 1).map(move |j| j as f64 * self.params.epsilon)
    }
}

/// The JSON file as written by a user; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Option<String>,
    lattice: Option<[usize; 2]>,
    #[serde(default)]
    params: Params,
    #[serde(default)]
    gw: GwSpec,
    resolution: Option<usize>,
    steps: Option<usize>,
    q: Option<f64>,
    out: Option<PathBuf>,
    threads: Option<usize>,
}

/// Values given on the command line; each one overrides the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub experiment: Option<String>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub resolution: Option<usize>,
    pub xi: Option<f64>,
    pub q: Option<f64>,
}

pub fn parse_config_str(text: &str) -> Result<RawConfigHandle, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
    Ok(RawConfigHandle(raw))
}

/// Parsed but not yet validated file contents.
#[derive(Debug)]
pub struct RawConfigHandle(RawConfig);

/// Reads `path` (if any), applies overrides and defaults, and validates.
pub fn parse_config(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let raw = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("config file {}: {e}", p.display())))?;
            parse_config_str(&text)?
        }
        None => RawConfigHandle(RawConfig::default()),
    };
    resolve(raw, overrides)
}

pub fn resolve(raw: RawConfigHandle, ov: &Overrides) -> Result<RunConfig, CliError> {
    let raw = raw.0;
    let name = ov
        .experiment
        .clone()
        .or(raw.experiment)
        .ok_or_else(|| CliError::Config("experiment: missing (use --experiment or the config key)".into()))?;
    let mut params = raw.params;
    if let Some(xi) = ov.xi {
        params.xi = xi;
    }
    let out = ov
        .out
        .clone()
        .or(raw.out)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let cfg = RunConfig {
        experiment: Experiment::parse(&name)?,
        lattice: raw.lattice.unwrap_or([64, 64]),
        params,
        gw: raw.gw,
        resolution: ov.resolution.or(raw.resolution).unwrap_or(512),
        steps: raw.steps.unwrap_or(32),
        q: ov.q.or(raw.q),
        out,
        threads: ov.threads.or(raw.threads).unwrap_or(0),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let bad = |key: &str, why: String| Err(CliError::Config(format!("{key}: {why}")));
    let [l1, l2] = cfg.lattice;
    if l1 < 2 || l2 < 2 || !l1.is_multiple_of(2) || !l2.is_multiple_of(2) {
        return bad("lattice", format!("sides must be even and at least 2, got {l1}x{l2}"));
    }
    let p = cfg.params;
    if !(p.epsilon > 0.0 && p.epsilon.is_finite()) {
        return bad("params.epsilon", format!("must be positive, got {}", p.epsilon));
    }
    if !p.mass.is_finite() {
        return bad("params.mass", format!("must be finite, got {}", p.mass));
    }
    if !p.xi.is_finite() {
        return bad("params.xi", format!("must be finite, got {}", p.xi));
    }
    if !cfg.gw.f.is_finite() {
        return bad("gw.f", "values must be finite".into());
    }
    if !cfg.gw.g.is_finite() {
        return bad("gw.g", "values must be finite".into());
    }
    if !(cfg.gw.k.is_finite() && cfg.gw.k_prime.is_finite()) {
        return bad("gw.k", "K and K' must be finite".into());
    }
    if cfg.resolution < 4 {
        return bad("resolution", format!("must be at least 4, got {}", cfg.resolution));
    }
    if cfg.experiment == Experiment::RhoMax && cfg.resolution < 256 {
        return bad("resolution", format!("rho-max needs at least 256, got {}", cfg.resolution));
    }
    if let Some(q) = cfg.q {
        if !(q > 0.0 && q < std::f64::consts::PI) {
            return bad("q", format!("must lie in (0, pi), got {q}"));
        }
    }
    cfg.gw_params()
        .check_times(cfg.sample_times())
        .map_err(|e| CliError::Config(format!("gw: {e}")))?;
    Ok(())
}

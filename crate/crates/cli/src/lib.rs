//! Experiment runner: JSON configuration in, CSV tables and a hashed manifest out.

pub mod config;
pub mod error;
pub mod experiments;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use config::{parse_config, Experiment, Overrides, RunConfig};
pub use error::CliError;
pub use experiments::{compute, Outcome};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Parser)]
#[command(name = "dtqw", version, about = "Run a quantum-walk experiment and write CSV tables")]
pub struct Args {
    /// JSON configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// evolve, spectrum, rho-max, unaffected-modes, interference, deltam-sweep, continuum-check or gw-angles.
    #[arg(long)]
    pub experiment: Option<String>,
    /// Output directory [default: $DTQW_OUT_DIR, then ./dtqw-out].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Grid resolution per axis.
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Interference wavenumber, snapped to the lattice.
    #[arg(long)]
    pub q: Option<f64>,
}

impl Args {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            experiment: self.experiment.clone(),
            out: self.out.clone(),
            threads: self.threads,
            resolution: self.resolution,
            xi: self.xi,
            q: self.q,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Computes the experiment on a pool of `cfg.threads` workers, then writes
/// every table and the manifest. Nothing is left behind on failure.
pub fn run(cfg: &RunConfig) -> Result<Value, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Config(format!("threads: {e}")))?;
    let outcome = pool.install(|| compute(cfg))?;
    write_outputs(cfg, &outcome)
}

fn write_outputs(cfg: &RunConfig, outcome: &Outcome) -> Result<Value, CliError> {
    let dir = &cfg.out;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    let result = (|| {
        let mut outputs = Vec::new();
        for (name, table) in &outcome.tables {
            let text = table.to_csv();
            let path = dir.join(name);
            written.push(path.clone());
            std::fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
            outputs.push(json!({
                "file": name,
                "columns": table.header,
                "rows": table.rows.len(),
                "sha256": sha256_hex(text.as_bytes()),
            }));
        }
        let config = serde_json::to_value(cfg).expect("config serialises");
        let config_text = serde_json::to_string(&config).expect("value serialises");
        let manifest = json!({
            "tool": "dtqw",
            "version": env!("CARGO_PKG_VERSION"),
            "experiment": cfg.experiment.name(),
            "inputs": { "config": config, "config_sha256": sha256_hex(config_text.as_bytes()) },
            "outputs": outputs,
            "results": outcome.results,
        });
        let path = dir.join(MANIFEST);
        written.push(path.clone());
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(manifest)
    })();
    if result.is_err() {
        remove_all(&written);
    }
    result
}

fn remove_all(paths: &[PathBuf]) {
    for p in paths {
        let _ = std::fs::remove_file(p);
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match parse_config(args.config.as_deref(), &args.overrides()).and_then(|cfg| run(&cfg).map(|m| (cfg, m))) {
        Ok((cfg, _)) => {
            eprintln!("wrote {}", cfg.out.join(MANIFEST).display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Reads a manifest back, e.g. to compare hashes across runs.
pub fn read_manifest(dir: &Path) -> Result<Value, CliError> {
    let path = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

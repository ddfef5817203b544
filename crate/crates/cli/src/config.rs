//! Flag and config-file merging.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use opa_herald::{Error, HilbertSpec, Result};
use serde::{Deserialize, Serialize};

pub const DIM_ENV: &str = "HERALD_OPA_DIM";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every command; the JSON config uses the same names.
#[derive(Clone, Debug, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Flags {
    /// Idler photons injected.
    #[arg(long)]
    pub m: Option<usize>,
    /// Idler photons detected.
    #[arg(long)]
    pub n: Option<usize>,
    /// OPA gain g >= 1.
    #[arg(long)]
    pub gain: Option<f64>,
    /// Input squeezing r.
    #[arg(long, allow_hyphen_values = true)]
    pub squeeze: Option<f64>,
    /// Fock cutoff.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Phase-space half-width in x and p.
    #[arg(long)]
    pub grid_extent: Option<f64>,
    /// Grid points per axis.
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Loss κt; a comma-separated list for loss sweeps.
    #[arg(long, value_delimiter = ',')]
    pub kappa_t: Option<Vec<f64>>,
    /// Dephasing κ_φ t.
    #[arg(long)]
    pub kphi_t: Option<f64>,
    /// Integrator steps.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Omit the timestamp comment from CSV outputs.
    #[arg(long, default_missing_value = "true", num_args = 0..=1)]
    pub no_timestamp: Option<bool>,
    /// State JSON (a herald dump or a plain ket) instead of --m/--n/--gain/--squeeze.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

macro_rules! merge_fields {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        Flags { $($f: $hi.$f.clone().or_else(|| $lo.$f.clone())),* }
    };
}

impl Flags {
    /// Fields set on `self` win over `other`.
    pub fn over(&self, other: &Flags) -> Flags {
        merge_fields!(
            self,
            other,
            m,
            n,
            gain,
            squeeze,
            dim,
            grid_extent,
            grid_n,
            kappa_t,
            kphi_t,
            steps,
            out,
            format,
            workers,
            no_timestamp,
            state
        )
    }

    pub fn from_file(path: &Path) -> Result<Flags> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Fully resolved settings, written next to every output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Resolved {
    pub command: String,
    pub m: usize,
    pub n: usize,
    pub gain: f64,
    pub squeeze: f64,
    pub dim: usize,
    pub grid_extent: f64,
    pub grid_n: usize,
    pub kappa_t: Vec<f64>,
    pub kphi_t: f64,
    pub steps: Option<usize>,
    pub out: PathBuf,
    pub format: Format,
    pub workers: usize,
    pub no_timestamp: bool,
    pub state: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
}

fn env_dim() -> Result<Option<usize>> {
    match std::env::var(DIM_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Domain(format!("{DIM_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

impl Resolved {
    /// Priority: flags, then config file, then environment (cutoff only), then defaults.
    pub fn build(command: &str, flags: &Flags, config: Option<&Path>, artifact: Option<String>) -> Result<Self> {
        let file = match config {
            Some(p) => Flags::from_file(p)?,
            None => Flags::default(),
        };
        let f = flags.over(&file);
        let dim = match f.dim {
            Some(d) => d,
            None => env_dim()?.unwrap_or(HilbertSpec::default().dim()),
        };
        let r = Resolved {
            command: command.into(),
            m: f.m.unwrap_or(1),
            n: f.n.unwrap_or(2),
            gain: f.gain.unwrap_or(1.5),
            squeeze: f.squeeze.unwrap_or(1.0),
            dim,
            grid_extent: f.grid_extent.unwrap_or(6.0),
            grid_n: f.grid_n.unwrap_or(301),
            kappa_t: f.kappa_t.unwrap_or_default(),
            kphi_t: f.kphi_t.unwrap_or(0.0),
            steps: f.steps,
            out: f.out.unwrap_or_else(|| PathBuf::from("out")),
            format: f.format.unwrap_or_default(),
            workers: f.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            no_timestamp: f.no_timestamp.unwrap_or(false),
            state: f.state,
            artifact,
        };
        if r.workers == 0 {
            return Err(Error::Domain("--workers must be >= 1".into()));
        }
        HilbertSpec::new(r.dim)?;
        Ok(r)
    }

    pub fn spec(&self) -> Result<HilbertSpec> {
        HilbertSpec::new(self.dim)
    }
}

//! Experiment configuration.
//!
//! A run is described by an optional TOML file, a size profile and command
//! line overrides, applied in that order. Every key of the file is optional:
//!
//! ```toml
//! profile = "desk"            # or "paper": n = 400, 10⁴ trials
//! n = 200
//! trials = 2000
//! master_seed = 1
//! k_max = 2
//! threads = 0                 # 0 = one per core
//! output_dir = "runs/ginue"
//! histogram_edges = { bins = 40 }   # or an explicit list [0.0, 0.1, ...]
//!
//! [ensemble]
//! kind = "elliptic_ginue"     # induced_ginue, induced_srue, tue
//! tau = 0.0                   # `a = ...` for the other kinds
//!
//! [[windows]]
//! lo = 0.0
//! hi = 1.0
//! region = { shape = "whole_plane" }
//! ```

use std::path::{Path, PathBuf};

use coulomb_gaps::ensembles::{EnsembleKind, EnsembleSpec};
use coulomb_gaps::theory::{RegionSpec, SizeWindow};
use coulomb_gaps::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "COULOMB_GAPS_OUT";
const FALLBACK_OUTPUT_DIR: &str = "coulomb-gaps-out";
const DEFAULT_BINS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// `n = 200`, 2000 trials.
    #[default]
    Desk,
    /// `n = 400`, 10⁴ trials.
    Paper,
}

impl Profile {
    pub fn n(self) -> usize {
        match self {
            Self::Desk => 200,
            Self::Paper => 400,
        }
    }

    pub fn trials(self) -> u64 {
        match self {
            Self::Desk => 2000,
            Self::Paper => 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HistogramEdges {
    Explicit(Vec<f64>),
    /// Equal bins on `[0, q]`, `q` the `1 − 10⁻⁴` quantile of the limit law of `t_k`.
    Auto {
        bins: usize,
    },
}

impl Default for HistogramEdges {
    fn default() -> Self {
        Self::Auto { bins: DEFAULT_BINS }
    }
}

/// A test window `A × Ω` as written in the config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub lo: f64,
    pub hi: f64,
    pub region: RegionSpec,
}

impl WindowSpec {
    pub fn size_window(&self) -> Result<SizeWindow> {
        if !self.hi.is_finite() {
            return Err(CliError::Argument(format!("window upper end must be finite, got {}", self.hi)));
        }
        Ok(SizeWindow::new(self.lo, self.hi)?)
    }
}

/// Contents of a config file; absent keys fall back to the profile.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub profile: Option<Profile>,
    pub ensemble: Option<EnsembleKind>,
    pub n: Option<usize>,
    pub trials: Option<u64>,
    pub master_seed: Option<u64>,
    pub k_max: Option<usize>,
    pub histogram_edges: Option<HistogramEdges>,
    pub windows: Option<Vec<WindowSpec>>,
    pub output_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Argument(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }
}

/// Command line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub paper_scale: bool,
    pub ensemble: Option<EnsembleKind>,
    pub n: Option<usize>,
    pub trials: Option<u64>,
    pub master_seed: Option<u64>,
    pub k_max: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ensemble: EnsembleSpec,
    pub trials: u64,
    pub master_seed: u64,
    pub k_max: usize,
    pub histogram_edges: HistogramEdges,
    pub windows: Vec<WindowSpec>,
    pub output_dir: PathBuf,
    /// Worker threads; `None` uses one per core.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// Desk-profile defaults for `kind` with windows `A = [0, 1)` over the
    /// whole plane and over the right half-plane.
    pub fn desk(kind: EnsembleKind) -> Result<Self> {
        Self::resolve(ConfigFile { ensemble: Some(kind), ..ConfigFile::default() }, &Overrides::default())
    }

    pub fn resolve(file: ConfigFile, overrides: &Overrides) -> Result<Self> {
        let profile = if overrides.paper_scale { Profile::Paper } else { file.profile.unwrap_or_default() };
        let kind = overrides.ensemble.or(file.ensemble).unwrap_or(EnsembleKind::EllipticGinUE { tau: 0.0 });
        let n = overrides.n.or(file.n).unwrap_or(profile.n());
        let output_dir = overrides
            .output_dir
            .clone()
            .or(file.output_dir)
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(FALLBACK_OUTPUT_DIR));
        let config = Self {
            ensemble: EnsembleSpec::new(kind, n)?,
            trials: overrides.trials.or(file.trials).unwrap_or(profile.trials()),
            master_seed: overrides.master_seed.or(file.master_seed).unwrap_or(1),
            k_max: overrides.k_max.or(file.k_max).unwrap_or(2),
            histogram_edges: file.histogram_edges.unwrap_or_default(),
            windows: file.windows.unwrap_or_else(default_windows),
            output_dir,
            threads: match overrides.threads.or(file.threads) {
                None | Some(0) => None,
                Some(t) => Some(t),
            },
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CliError::Argument("trials must be at least 1".into()));
        }
        if self.k_max == 0 {
            return Err(CliError::Argument("k_max must be at least 1".into()));
        }
        let n = self.ensemble.n();
        if self.k_max > n * (n - 1) / 2 {
            return Err(CliError::Argument(format!("k_max = {} exceeds the number of pairs", self.k_max)));
        }
        match &self.histogram_edges {
            HistogramEdges::Auto { bins } if *bins == 0 => {
                return Err(CliError::Argument("histogram needs at least one bin".into()));
            }
            HistogramEdges::Explicit(edges)
                if edges.len() < 2
                    || !edges.windows(2).all(|w| w[0] < w[1])
                    || !edges.iter().all(|e| e.is_finite()) =>
            {
                return Err(CliError::Argument("histogram edges must be finite and increasing".into()));
            }
            _ => {}
        }
        for w in &self.windows {
            w.size_window()?;
            w.region.validate()?;
        }
        Ok(())
    }
}

fn default_windows() -> Vec<WindowSpec> {
    vec![
        WindowSpec { lo: 0.0, hi: 1.0, region: RegionSpec::WholePlane },
        WindowSpec {
            lo: 0.0,
            hi: 1.0,
            region: RegionSpec::HalfPlane { normal: Complex64::new(1.0, 0.0), offset: 0.0 },
        },
    ]
}

/// Parses `ginue`, `elliptic_ginue[:tau=x]`, `induced_ginue[:a=x]`,
/// `induced_srue[:a=x]` or `tue[:a=x]`. Missing parameters take the values
/// of the reference experiments (`τ = 1/2`, `a = 1/2`, `a = 1.25`, `a = 1/4`).
pub fn parse_ensemble(text: &str) -> Result<EnsembleKind> {
    let (name, param) = match text.split_once(':') {
        Some((name, rest)) => {
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| CliError::Argument(format!("expected key=value after ':' in {text:?}")))?;
            let value: f64 =
                value.trim().parse().map_err(|_| CliError::Argument(format!("{value:?} is not a number")))?;
            (name.trim(), Some((key.trim(), value)))
        }
        None => (text.trim(), None),
    };
    let expect = |wanted: &str, default: f64| -> Result<f64> {
        match param {
            None => Ok(default),
            Some((key, value)) if key == wanted => Ok(value),
            Some((key, _)) => Err(CliError::Argument(format!("{name} takes `{wanted}`, not `{key}`"))),
        }
    };
    match name.to_ascii_lowercase().as_str() {
        "ginue" => match param {
            None => Ok(EnsembleKind::EllipticGinUE { tau: 0.0 }),
            Some(_) => Err(CliError::Argument("ginue takes no parameter".into())),
        },
        "elliptic_ginue" | "elliptic" => Ok(EnsembleKind::EllipticGinUE { tau: expect("tau", 0.5)? }),
        "induced_ginue" => Ok(EnsembleKind::InducedGinUE { a: expect("a", 0.5)? }),
        "induced_srue" | "srue" => Ok(EnsembleKind::InducedSrUE { a: expect("a", 1.25)? }),
        "tue" => Ok(EnsembleKind::Tue { a: expect("a", 0.25)? }),
        other => Err(CliError::Argument(format!("unknown ensemble {other:?}"))),
    }
}

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FamilyKind, FamilySpec};
use crate::markov::ExactConfig;

/// One quantity the runner can produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    THit,
    TMix,
    TSep,
    Lambda2,
    /// Exact worst-pair and stationary meeting times.
    TMeet,
    Collision,
    /// Monte Carlo coalescence time from every vertex.
    TCoal,
    /// Monte Carlo meeting time from a worst-case candidate pair.
    TMeetMc,
    /// Monte Carlo meeting time from two stationary starts.
    TMeetPiMc,
    /// Monte Carlo lazy voter consensus time.
    Voter,
    /// Explicit-constant checks; pulls in every exact quantity they need.
    Bounds,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::THit,
        Quantity::TMix,
        Quantity::TSep,
        Quantity::Lambda2,
        Quantity::TMeet,
        Quantity::Collision,
        Quantity::TCoal,
        Quantity::TMeetMc,
        Quantity::TMeetPiMc,
        Quantity::Voter,
        Quantity::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::THit => "t_hit",
            Quantity::TMix => "t_mix",
            Quantity::TSep => "t_sep",
            Quantity::Lambda2 => "lambda2",
            Quantity::TMeet => "t_meet",
            Quantity::Collision => "collision",
            Quantity::TCoal => "t_coal",
            Quantity::TMeetMc => "t_meet_mc",
            Quantity::TMeetPiMc => "t_meet_pi_mc",
            Quantity::Voter => "voter",
            Quantity::Bounds => "bounds",
        }
    }

    pub fn is_monte_carlo(self) -> bool {
        matches!(self, Quantity::TCoal | Quantity::TMeetMc | Quantity::TMeetPiMc | Quantity::Voter)
    }

    /// Position used to derive per-quantity seeds.
    pub(crate) fn index(self) -> u64 {
        Quantity::ALL.iter().position(|&q| q == self).unwrap() as u64
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quantity {s:?}")))
    }
}

/// How sweep sizes are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeKind {
    /// Approximate vertex count.
    #[default]
    Vertices,
    /// The family's own parameter (side, levels, dimension, ...).
    Native,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub family: FamilyKind,
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub size_kind: SizeKind,
    pub dim: Option<u32>,
    pub degree: Option<usize>,
    pub alpha: Option<f64>,
}

impl Sweep {
    pub fn specs(&self) -> Result<Vec<FamilySpec>> {
        self.sizes
            .iter()
            .map(|&s| match self.size_kind {
                SizeKind::Vertices => FamilySpec::with_vertices(self.family, s, self.dim, self.degree, self.alpha),
                SizeKind::Native => FamilySpec::from_size(self.family, s, self.dim, self.degree, self.alpha),
            })
            .collect()
    }
}

/// A batch experiment, usually read from a TOML file.
///
/// ```toml
/// master_seed = 7
/// trials = 200
/// quantities = ["t_hit", "t_coal", "bounds"]
/// output_dir = "out"
///
/// [[sweep]]
/// family = "torus"
/// dim = 3
/// sizes = [4, 5, 6, 8]
/// size_kind = "native"
///
/// [exact]
/// meeting_limit = 100
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "sweep")]
    pub sweeps: Vec<Sweep>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub master_seed: Option<u64>,
    /// Step cap for every simulation; defaults to `50n³`.
    pub cap: Option<u64>,
    pub quantities: Vec<Quantity>,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub exact: ExactConfig,
}

fn default_trials() -> usize {
    100
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn needs_seed(&self) -> bool {
        self.quantities.iter().any(|q| q.is_monte_carlo())
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweeps.is_empty() {
            return Err(Error::Config("no sweep given".into()));
        }
        if self.quantities.is_empty() {
            return Err(Error::Config("no quantities requested".into()));
        }
        for s in &self.sweeps {
            if s.sizes.is_empty() {
                return Err(Error::Config(format!("{}: empty size list", s.family)));
            }
            if s.sizes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Config(format!("{}: sizes must be strictly increasing", s.family)));
            }
            for spec in s.specs()? {
                spec.check()?;
            }
        }
        if self.needs_seed() {
            if self.master_seed.is_none() {
                return Err(Error::Config("a master seed is required for Monte Carlo quantities".into()));
            }
            if self.trials < 2 {
                return Err(Error::Config(format!("trials must be at least 2, got {}", self.trials)));
            }
        }
        if self.cap == Some(0) {
            return Err(Error::Config("cap must be positive".into()));
        }
        Ok(())
    }
}

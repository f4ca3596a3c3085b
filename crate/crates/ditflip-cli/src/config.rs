//! Run configuration: channel family, parameters, state, grids, output.
//!
//! A run is described by flags, by a JSON document (`--config`), or both;
//! flags override file values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use ditflip::{
    enumerate_d_cycles, werner, DensityMatrix64, FlipProbabilities, KrausChannel64, Subsystem,
    WernerSpec,
};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Family {
    Idf,
    SuIdf,
    Full,
    SuFull,
    Shift,
    DampedShift,
    Shuffled,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Idf,
        Family::SuIdf,
        Family::Full,
        Family::SuFull,
        Family::Shift,
        Family::DampedShift,
        Family::Shuffled,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Idf => "idf",
            Family::SuIdf => "su_idf",
            Family::Full => "full",
            Family::SuFull => "su_full",
            Family::Shift => "shift",
            Family::DampedShift => "damped_shift",
            Family::Shuffled => "shuffled",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Target {
    A,
    B,
}

impl Target {
    pub fn subsystem(&self) -> Subsystem {
        match self {
            Target::A => Subsystem::A,
            Target::B => Subsystem::B,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Target::A => "A",
            Target::B => "B",
        }
    }
}

/// `AxB` bipartite dimensions, e.g. `2x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims(pub usize, pub usize);

impl FromStr for Dims {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(['x', 'X'])
            .with_context(|| format!("dims `{s}` must look like 2x3"))?;
        let a: usize = a.trim().parse().context("left dimension is not a number")?;
        let b: usize = b
            .trim()
            .parse()
            .context("right dimension is not a number")?;
        Ok(Dims(a, b))
    }
}

/// JSON file shape; every field optional so flags can fill the rest.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<Family>,
    pub dims: Option<[usize; 2]>,
    pub target: Option<Target>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub f: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub weights: Option<Vec<f64>>,
    pub a: Option<f64>,
    pub p: Option<f64>,
    pub grid: Option<usize>,
    pub out: Option<PathBuf>,
    /// Custom maximally entangled vector as `[re, im]` pairs.
    pub psi: Option<Vec<[f64; 2]>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("invalid config file {}", path.display()))
    }
}

/// Fully resolved run: family, fixed channel parameters, state recipe, grids.
#[derive(Debug, Clone, Serialize)]
pub struct RunSpec {
    pub family: Family,
    pub dims: [usize; 2],
    pub target: Target,
    pub i: usize,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub grid: usize,
    #[serde(skip)]
    pub out: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<[f64; 2]>>,
}

impl RunSpec {
    /// Dimension of the subsystem the channel acts on.
    pub fn target_dim(&self) -> usize {
        match self.target {
            Target::A => self.dims[0],
            Target::B => self.dims[1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [d_a, d_b] = self.dims;
        if d_a < 2 || d_b < 2 {
            bail!("dims {d_a}x{d_b}: both subsystems need at least 2 levels");
        }
        if self.grid < 2 {
            bail!("grid resolution {} is below the minimum of 2", self.grid);
        }
        for (name, value) in [("a", self.a), ("p", self.p)] {
            if let Some(v) = value {
                if !(0.0..=1.0).contains(&v) {
                    bail!("{name} = {v} outside [0, 1]");
                }
            }
        }
        let d = self.target_dim();
        if self.i >= d || self.j >= d {
            bail!(
                "flip pair ({}, {}) out of range for the {}-level target subsystem",
                self.i,
                self.j,
                d
            );
        }
        // Constructing a channel surfaces any remaining family constraint
        // (weight counts, f+b sums) with the violated constraint named.
        self.channel(self.p.unwrap_or(0.5))?;
        if let Some(psi) = &self.psi {
            if psi.len() != d_a * d_b {
                bail!("psi has {} amplitudes, expected {}", psi.len(), d_a * d_b);
            }
        }
        Ok(())
    }

    /// Effective shift coefficients: explicit values win, a missing partner
    /// is filled from the budget (1 for shift, `t` for damped shift), and
    /// with neither given the budget is split evenly.
    pub fn shift_coefficients(&self) -> (f64, f64, f64) {
        let t = match self.family {
            Family::DampedShift => self.t.unwrap_or(1.0),
            _ => 1.0,
        };
        let (f, b) = match (self.f, self.b) {
            (Some(f), Some(b)) => (f, b),
            (Some(f), None) => (f, t - f),
            (None, Some(b)) => (t - b, b),
            (None, None) => (t / 2.0, t / 2.0),
        };
        (f, b, t)
    }

    pub fn effective_weights(&self, d: usize) -> Result<Vec<f64>> {
        let count = enumerate_d_cycles(d)?.len();
        match &self.weights {
            Some(w) => Ok(w.clone()),
            None => Ok(vec![1.0 / count as f64; count]),
        }
    }

    /// Single-qudit channel of this run's family at flip probability `p`.
    pub fn channel(&self, p: f64) -> Result<KrausChannel64> {
        let d = self.target_dim();
        let ch = match self.family {
            Family::Idf => KrausChannel64::individual_flip(d, self.i, self.j, p)?,
            Family::SuIdf => KrausChannel64::su_individual_flip(d, self.i, self.j, p)?,
            Family::Full => {
                let mut probs = FlipProbabilities::new(d)?;
                probs.set(self.i, self.j, p)?;
                KrausChannel64::full_flip(&probs)?
            }
            Family::SuFull => {
                let mut probs = FlipProbabilities::new(d)?;
                probs.set(self.i, self.j, p)?;
                KrausChannel64::su_full_flip(&probs)?
            }
            Family::Shift => {
                let (f, b, _) = self.shift_coefficients();
                KrausChannel64::shift(d, p, f, b)?
            }
            Family::DampedShift => {
                let (f, b, t) = self.shift_coefficients();
                KrausChannel64::damped_shift(d, p, f, b, t)?
            }
            Family::Shuffled => {
                let weights = self.effective_weights(d)?;
                KrausChannel64::shuffled_shift(d, p, &weights)?
            }
        };
        Ok(ch)
    }

    /// The channel lifted onto the target subsystem of the bipartite state.
    pub fn lifted_channel(&self, p: f64) -> Result<KrausChannel64> {
        let [d_a, d_b] = self.dims;
        Ok(self
            .channel(p)?
            .lift_to_subsystem(d_a, d_b, self.target.subsystem())?)
    }

    /// Werner state at mixing parameter `a` (custom psi honored).
    pub fn werner_state(&self, a: f64) -> Result<DensityMatrix64> {
        let [d_a, d_b] = self.dims;
        let spec = match &self.psi {
            None => WernerSpec::new(d_a, d_b, a)?,
            Some(psi) => {
                let vec: Vec<Complex<f64>> =
                    psi.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
                WernerSpec::with_psi(d_a, d_b, a, vec)?
            }
        };
        Ok(werner(&spec)?)
    }

    /// Canonical one-line JSON echo for report headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("run spec serializes")
    }
}

/// Flag values shared by `sweep` and `apply`; everything optional so the
/// config file can supply missing pieces.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct RunArgs {
    /// Channel family
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Bipartite dimensions, e.g. 2x3 or 3x3
    #[arg(long)]
    pub dims: Option<Dims>,
    /// Subsystem the channel acts on
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// First flip index
    #[arg(long)]
    pub i: Option<usize>,
    /// Second flip index
    #[arg(long)]
    pub j: Option<usize>,
    /// Forward coefficient (shift families)
    #[arg(long)]
    pub f: Option<f64>,
    /// Backward coefficient (shift families)
    #[arg(long)]
    pub b: Option<f64>,
    /// Scaling factor (damped shift)
    #[arg(long)]
    pub t: Option<f64>,
    /// Cycle weights for the shuffled family, comma-separated
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Werner mixing parameter; sweeps treat a missing value as a full grid
    #[arg(long)]
    pub a: Option<f64>,
    /// Flip probability; sweeps treat a missing value as a full grid
    #[arg(long)]
    pub p: Option<f64>,
    /// Grid resolution per swept axis
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output CSV path (sweep)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunSpec> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let family = self
            .family
            .or(file.family)
            .context("missing --family (or `family` in the config file)")?;
        let dims = self
            .dims
            .map(|Dims(a, b)| [a, b])
            .or(file.dims)
            .context("missing --dims (or `dims` in the config file)")?;
        let spec = RunSpec {
            family,
            dims,
            target: self.target.or(file.target).unwrap_or(Target::B),
            i: self.i.or(file.i).unwrap_or(0),
            j: self.j.or(file.j).unwrap_or(1),
            f: self.f.or(file.f),
            b: self.b.or(file.b),
            t: self.t.or(file.t),
            weights: self.weights.clone().or(file.weights),
            a: self.a.or(file.a),
            p: self.p.or(file.p),
            grid: self.grid.or(file.grid).unwrap_or(101),
            out: self
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| "sweep.csv".into()),
            psi: file.psi,
        };
        spec.validate()?;
        Ok(spec)
    }
}

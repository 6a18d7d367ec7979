//! Configuration tree shared by the harness and the CLI.
//!
//! Values are resolved in three layers: the named profile's defaults, then an
//! optional TOML file, then `key.path=value` overrides. Layers are merged as
//! TOML values before deserializing, so partial sections are fine but unknown
//! keys anywhere are rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::error::{invalid, Error, Result};
use crate::optimizers::{Algorithm, OptimizerConfig};
use crate::plant::PlantParams;
use crate::simulator::{case_catalog, LoadCase, SimConfig};
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Reduced budget for quick runs: N = 50, 100 iterations, 5 runs per cell.
    #[default]
    Desk,
    /// Full reproduction budget: N = 100, 500 iterations, 30 runs per cell.
    Full,
}

impl Profile {
    pub fn label(self) -> &'static str {
        match self {
            Profile::Desk => "desk",
            Profile::Full => "full",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Profile::Desk),
            "full" => Ok(Profile::Full),
            _ => Err(invalid("profile", format!("unknown profile `{s}` (expected desk or full)"))),
        }
    }
}

/// Which cells an experiment runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlanConfig {
    pub algorithms: Vec<Algorithm>,
    /// Ids into the `cases` list.
    pub cases: Vec<u8>,
    pub runs_per_cell: usize,
    /// Run `r` of every cell uses seed `base_seed + r`.
    pub base_seed: u64,
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    /// Iteration used for the after-k convergence comparison.
    pub first_k: usize,
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            cases: vec![1, 2, 3, 4, 5],
            runs_per_cell: 30,
            base_seed: 0,
            threads: 0,
            first_k: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub plant: PlantParams,
    pub sim: SimConfig,
    pub search_space: SearchSpace,
    pub optimizers: OptimizerConfig,
    pub cases: Vec<LoadCase>,
    pub plan: PlanConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self::for_profile(Profile::Full)
    }
}

impl Config {
    pub fn for_profile(profile: Profile) -> Self {
        let mut cfg = Self {
            plant: PlantParams::default(),
            sim: SimConfig::default(),
            search_space: SearchSpace::default(),
            optimizers: OptimizerConfig::default(),
            cases: case_catalog(),
            plan: PlanConfig::default(),
        };
        if profile == Profile::Desk {
            cfg.optimizers.population = 50;
            cfg.optimizers.max_iterations = 100;
            cfg.plan.runs_per_cell = 5;
        }
        cfg
    }

    /// Profile defaults, then `file`, then `overrides` (`a.b=value`).
    pub fn load(profile: Profile, file: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut tree = Value::try_from(Self::for_profile(profile)).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)?;
            let layer: Value = toml::from_str(&text)?;
            merge(&mut tree, layer);
        }
        for ov in overrides {
            apply_override(&mut tree, ov)?;
        }
        let cfg: Config = tree.try_into()?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.plant.validate()?;
        self.sim.validate()?;
        self.search_space.validate()?;
        if self.search_space.dim() != 6 {
            return Err(invalid("search_space", "the gain box must be 6-dimensional"));
        }
        self.optimizers.validate()?;
        for c in &self.cases {
            c.validate()?;
        }
        for id in &self.plan.cases {
            self.case(*id)?;
        }
        if self.plan.runs_per_cell == 0 {
            return Err(invalid("plan.runs_per_cell", "must be >= 1"));
        }
        if self.plan.first_k == 0 {
            return Err(invalid("plan.first_k", "must be >= 1"));
        }
        for a in &self.plan.algorithms {
            self.optimizers.validate_for(*a)?;
        }
        Ok(())
    }

    pub fn case(&self, id: u8) -> Result<LoadCase> {
        self.cases
            .iter()
            .find(|c| c.id == id)
            .copied()
            .ok_or_else(|| invalid("plan.cases", format!("case {id} is not defined in `cases`")))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Deep-merges `layer` into `base`; tables merge key by key, everything else replaces.
fn merge(base: &mut Value, layer: Value) {
    match (base, layer) {
        (Value::Table(b), Value::Table(l)) => {
            for (k, v) in l {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// Applies `a.b.c=value`. The value is parsed as TOML (`0.5`, `true`,
/// `[1, 2]`, `"x"`); anything that does not parse is taken as a bare string.
fn apply_override(tree: &mut Value, entry: &str) -> Result<()> {
    let (path, raw) = entry
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{entry}` must look like key.path=value")))?;
    let path = path.trim();
    if path.is_empty() || path.split('.').any(str::is_empty) {
        return Err(Error::Config(format!("override `{entry}` has an empty key")));
    }
    let value = parse_value(raw.trim());
    let mut cursor = tree;
    let keys: Vec<&str> = path.split('.').collect();
    for (n, key) in keys.iter().enumerate() {
        let table = cursor
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("override `{entry}`: `{key}` is not inside a section")))?;
        if n + 1 == keys.len() {
            if !table.contains_key(*key) {
                return Err(Error::Config(format!("override `{entry}`: unknown key `{path}`")));
            }
            table.insert((*key).to_string(), value);
            return Ok(());
        }
        cursor = table
            .get_mut(*key)
            .ok_or_else(|| Error::Config(format!("override `{entry}`: unknown section `{key}`")))?;
    }
    unreachable!("path has at least one key")
}

fn parse_value(raw: &str) -> Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

//! JSON run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use optomech_core::SystemParams;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Steady,
    Bistability,
    Hysteresis,
    StabilityMap,
    Damping,
    Spring,
    MeanField,
    Covariance,
    StaticPotential,
    Regime,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Steady,
        Command::Bistability,
        Command::Hysteresis,
        Command::StabilityMap,
        Command::Damping,
        Command::Spring,
        Command::MeanField,
        Command::Covariance,
        Command::StaticPotential,
        Command::Regime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Steady => "steady",
            Command::Bistability => "bistability",
            Command::Hysteresis => "hysteresis",
            Command::StabilityMap => "stability-map",
            Command::Damping => "damping",
            Command::Spring => "spring",
            Command::MeanField => "mean-field",
            Command::Covariance => "covariance",
            Command::StaticPotential => "static-potential",
            Command::Regime => "regime",
        }
    }

    /// Grids the command cannot run without.
    pub fn required_grids(self) -> &'static [&'static str] {
        match self {
            Command::Bistability | Command::Hysteresis => &["Delta0"],
            Command::StabilityMap => &["Delta0", "A_l"],
            Command::Damping | Command::Spring | Command::Regime => &["Delta"],
            Command::StaticPotential => &["x"],
            Command::Steady | Command::MeanField | Command::Covariance => &[],
        }
    }

    fn required_options(self) -> &'static [&'static str] {
        match self {
            Command::Damping | Command::Spring | Command::Regime => &["g_s"],
            Command::StaticPotential => &["k_HO", "F0", "lambda", "finesse"],
            _ => &[],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evenly spaced range, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// Command-specific inputs that are not system parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Enhanced coupling for damping, spring and regime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_s: Option<f64>,
    /// Resonance half-width for the regime classifier.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_res: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    /// Initial optical amplitude `[re, im]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta0: Option<[f64; 2]>,
    /// Fixed point to linearize about: index into the ascending roots.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<usize>,
    /// Diagonal of the initial covariance matrix.
    #[serde(rename = "V0", skip_serializing_if = "Option::is_none")]
    pub v0: Option<[f64; 4]>,
    #[serde(rename = "k_HO", skip_serializing_if = "Option::is_none")]
    pub k_ho: Option<f64>,
    #[serde(rename = "F0", skip_serializing_if = "Option::is_none")]
    pub f0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finesse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_resonance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resonance_count: Option<usize>,
}

const OPTION_KEYS: [&str; 15] = [
    "g_s",
    "tol_res",
    "t_end",
    "dt",
    "record_every",
    "alpha0",
    "beta0",
    "branch",
    "V0",
    "k_HO",
    "F0",
    "lambda",
    "finesse",
    "first_resonance",
    "resonance_count",
];

const TOP_KEYS: [&str; 6] = ["command", "params", "grids", "output_dir", "seed", "options"];
const GRID_NAMES: [&str; 4] = ["Delta0", "A_l", "Delta", "x"];
const GRID_KEYS: [&str; 3] = ["start", "stop", "count"];

/// Declarative description of one CLI run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub command: Command,
    pub params: SystemParams,
    #[serde(default)]
    pub grids: BTreeMap<String, GridSpec>,
    pub output_dir: PathBuf,
    /// Reserved; no command draws random numbers.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: Options,
}

impl RunSpec {
    pub fn grid(&self, name: &str) -> Result<Vec<f64>> {
        self.grids
            .get(name)
            .map(GridSpec::points)
            .ok_or_else(|| CliError::Config(format!("command {} needs a {name} grid", self.command)))
    }

    pub fn validate(self) -> Result<Self> {
        self.params
            .validate()
            .map_err(|e| CliError::Config(format!("params: {e}")))?;
        for (name, g) in &self.grids {
            if g.count < 2 {
                return Err(CliError::Config(format!(
                    "grids.{name}.count must be ≥ 2 (got {})",
                    g.count
                )));
            }
            if !(g.start.is_finite() && g.stop.is_finite() && g.stop > g.start) {
                return Err(CliError::Config(format!(
                    "grids.{name}: stop must be > start (got start {}, stop {})",
                    g.start, g.stop
                )));
            }
        }
        for name in self.command.required_grids() {
            if !self.grids.contains_key(*name) {
                return Err(CliError::Config(format!(
                    "command {} requires grids.{name}",
                    self.command
                )));
            }
        }
        let options = serde_json::to_value(&self.options).expect("options serialize");
        for key in self.command.required_options() {
            if options.get(key).is_none() {
                return Err(CliError::Config(format!(
                    "command {} requires options.{key}",
                    self.command
                )));
            }
        }
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run spec serializes");
        s.push('\n');
        s
    }
}

/// Reads, strictly parses and validates a run configuration.
pub fn load_config(path: &Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        CliError::Config(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    check_keys(&value)?;
    let spec: RunSpec =
        serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))?;
    spec.validate()
}

fn check_keys(value: &Value) -> Result<()> {
    let top = value
        .as_object()
        .ok_or_else(|| CliError::Config("config must be a JSON object".into()))?;
    reject_unknown(top.keys(), &TOP_KEYS, "")?;
    if let Some(Value::Object(params)) = top.get("params") {
        reject_unknown(params.keys(), &SystemParams::FIELD_NAMES, "params.")?;
    }
    if let Some(Value::Object(grids)) = top.get("grids") {
        reject_unknown(grids.keys(), &GRID_NAMES, "grids.")?;
        for (name, g) in grids {
            if let Value::Object(g) = g {
                reject_unknown(g.keys(), &GRID_KEYS, &format!("grids.{name}."))?;
            }
        }
    }
    if let Some(Value::Object(options)) = top.get("options") {
        reject_unknown(options.keys(), &OPTION_KEYS, "options.")?;
    }
    if let Some(Value::String(c)) = top.get("command") {
        let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
        if !names.contains(&c.as_str()) {
            return Err(CliError::Config(format!(
                "unknown command \"{c}\"{}",
                suggestion(c, &names)
            )));
        }
    }
    Ok(())
}

fn reject_unknown<'a>(
    keys: impl Iterator<Item = &'a String>,
    allowed: &[&str],
    prefix: &str,
) -> Result<()> {
    for key in keys {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "unknown key \"{prefix}{key}\"{}",
                suggestion(key, allowed)
            )));
        }
    }
    Ok(())
}

fn suggestion(key: &str, allowed: &[&str]) -> String {
    allowed
        .iter()
        .map(|a| (strsim::jaro_winkler(key, a), a))
        .filter(|(score, _)| *score > 0.7)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, a)| format!("; did you mean \"{a}\"?"))
        .unwrap_or_default()
}

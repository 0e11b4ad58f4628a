//! Run configurations: defaults, overlaid by a JSON file, overlaid by flags.

use crate::values::{IndexRange, ModeList, RealList};
use crate::CliError;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};

/// Fixed seed of the `p ≠ 2` norm search.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub suite: String,
    pub tol_profile: String,
    pub out: Option<PathBuf>,
    pub wall_time: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: "default".into(),
            tol_profile: "standard".into(),
            out: None,
            wall_time: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub form: String,
    pub d: usize,
    pub gamma: f64,
    /// Defaults to the critical index plus `delta_offset`.
    pub delta: Option<f64>,
    pub delta_offset: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub r: RealList,
    /// Defaults to `r`.
    pub s: Option<RealList>,
    pub epsilon: f64,
    pub beta: f64,
    pub half_shift: bool,
    pub p: f64,
    pub out: Option<PathBuf>,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            form: "laguerre_sum".into(),
            d: 2,
            gamma: 0.3,
            delta: None,
            delta_offset: 0.5,
            n: 10,
            m: 2,
            r: RealList(vec![0.25, 0.5, 1.0, 1.5, 2.0, 2.5]),
            s: None,
            epsilon: 0.5,
            beta: 0.0,
            half_shift: false,
            p: 4.0,
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormsConfig {
    pub d: usize,
    pub gamma: f64,
    pub delta: Option<f64>,
    pub delta_offset: f64,
    pub p: RealList,
    #[serde(rename = "N")]
    pub n: IndexRange,
    pub m: IndexRange,
    pub seed: u64,
    pub random_trials: usize,
    pub refine: usize,
    pub power_iterations: usize,
    pub out: Option<PathBuf>,
}

impl Default for NormsConfig {
    fn default() -> Self {
        Self {
            d: 2,
            gamma: 0.3,
            delta: None,
            delta_offset: 0.5,
            p: RealList(vec![2.0]),
            n: IndexRange::new(0, 20),
            m: IndexRange::new(0, 4),
            seed: DEFAULT_SEED,
            random_trials: 6,
            refine: 3,
            power_iterations: 40,
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeConfig {
    pub d: usize,
    pub gamma: f64,
    pub delta: Option<f64>,
    pub delta_offset: f64,
    pub p: f64,
    pub modes: ModeList,
    /// Rows kept; the rule is built for the range end.
    #[serde(rename = "N")]
    pub n: IndexRange,
    pub out: Option<PathBuf>,
}

impl Default for ConvergeConfig {
    fn default() -> Self {
        Self {
            d: 2,
            gamma: 0.3,
            delta: None,
            delta_offset: 0.5,
            p: 2.0,
            modes: ModeList(vec![(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)]),
            n: IndexRange::new(2, 200),
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingConfig {
    pub d: usize,
    pub gamma: f64,
    pub epsilon: f64,
    pub p: f64,
    #[serde(rename = "N")]
    pub n: IndexRange,
    /// Imaginary parts of `ζ`; each is paired with the two strip edges and the midline.
    pub betas: RealList,
    pub out: Option<PathBuf>,
}

impl Default for PairingConfig {
    fn default() -> Self {
        Self {
            d: 2,
            gamma: 0.25,
            epsilon: 0.5,
            p: 4.0,
            n: IndexRange::new(0, 30),
            betas: RealList(vec![0.0, 1.0]),
            out: None,
        }
    }
}

fn read_file(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Usage(format!("config {} must hold a JSON object", path.display()))),
        Err(e) => Err(CliError::Usage(format!("config {}: {e}", path.display()))),
    }
}

/// `defaults ← file ← flags`; keys absent from the defaults are rejected.
pub fn resolve<C, F>(file: Option<&Path>, flags: &F) -> Result<C, CliError>
where
    C: Default + Serialize + DeserializeOwned,
    F: Serialize,
{
    let Value::Object(mut merged) = serde_json::to_value(C::default()).expect("config defaults serialize") else {
        unreachable!("configs are structs");
    };
    if let Some(path) = file {
        for (k, v) in read_file(path)? {
            if !merged.contains_key(&k) {
                return Err(CliError::Usage(format!("unknown key '{k}' in config {}", path.display())));
            }
            merged.insert(k, v);
        }
    }
    if let Value::Object(set) = serde_json::to_value(flags).expect("flags serialize") {
        merged.extend(set);
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))
}

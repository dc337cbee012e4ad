//! Pipeline configuration, read from TOML.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::clustering::ClusterAlgo;
use crate::encoding::DEFAULT_SMOOTHING;
use crate::evaluate::{PlanningFloors, DEFAULT_TOLERANCE};
use crate::eventlog::InputFormat;
use crate::models::ModelFamily;
use crate::synthgen::SynthConfig;
use crate::{Error, Phase, Result};

/// How group-mean models key their groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKey {
    /// Cluster of the phase's primary description.
    Cluster,
    /// The raw primary description.
    ExactName,
}

impl std::str::FromStr for GroupKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cluster" => Ok(GroupKey::Cluster),
            "exact-name" | "exact_name" => Ok(GroupKey::ExactName),
            other => Err(Error::Config(format!("unknown group key `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputSettings {
    /// Defaults to `<out>/events.csv`.
    pub events: Option<PathBuf>,
    /// Defaults to `<out>/cases.csv`.
    pub cases: Option<PathBuf>,
    /// `csv` or `jsonl`.
    pub format: String,
    /// Skip malformed records instead of failing.
    pub lenient: bool,
}

impl Default for InputSettings {
    fn default() -> Self {
        Self {
            events: None,
            cases: None,
            format: "csv".into(),
            lenient: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CleaningSettings {
    pub iqr_multiplier: f64,
    pub per_department: bool,
}

impl Default for CleaningSettings {
    fn default() -> Self {
        Self {
            iqr_multiplier: 1.5,
            per_department: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TextSettings {
    /// `from,to` CSV replacing the built-in synonym table.
    pub synonyms: Option<PathBuf>,
    /// Use the built-in table when no file is given.
    pub default_synonyms: bool,
    pub max_terms: usize,
}

impl Default for TextSettings {
    fn default() -> Self {
        Self {
            synonyms: None,
            default_synonyms: true,
            max_terms: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FieldClustering {
    pub algo: ClusterAlgo,
    pub k_min: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusteringSettings {
    pub procedure: FieldClustering,
    pub anesthesia: FieldClustering,
}

impl Default for FieldClustering {
    fn default() -> Self {
        Self {
            algo: ClusterAlgo::KMeans,
            k_min: 2,
            k_max: 40,
        }
    }
}

impl Default for ClusteringSettings {
    fn default() -> Self {
        Self {
            procedure: FieldClustering::default(),
            anesthesia: FieldClustering {
                algo: ClusterAlgo::Gmm,
                k_min: 2,
                k_max: 20,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSettings {
    pub roster: Vec<ModelFamily>,
    pub group_by: GroupKey,
    pub cv_folds: usize,
    pub smoothing: f64,
    /// Per-family grid overrides, e.g. `[models.grids.gbm] n_trees = [50]`.
    pub grids: BTreeMap<ModelFamily, BTreeMap<String, Vec<f64>>>,
}

impl Default for ModelSettings {
    fn default() -> Self {
        Self {
            roster: ModelFamily::ROSTER.to_vec(),
            group_by: GroupKey::Cluster,
            cv_folds: 5,
            smoothing: DEFAULT_SMOOTHING,
            grids: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub out: PathBuf,
    pub phases: Vec<Phase>,
    pub test_fraction: f64,
    pub tolerance: f64,
    pub input: InputSettings,
    pub cleaning: CleaningSettings,
    pub text: TextSettings,
    pub clustering: ClusteringSettings,
    pub models: ModelSettings,
    pub floors: PlanningFloors,
    pub synth: SynthConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            out: PathBuf::from("out"),
            phases: Phase::ALL.to_vec(),
            test_fraction: 0.2,
            tolerance: DEFAULT_TOLERANCE,
            input: InputSettings::default(),
            cleaning: CleaningSettings::default(),
            text: TextSettings::default(),
            clustering: ClusteringSettings::default(),
            models: ModelSettings::default(),
            floors: PlanningFloors::default(),
            synth: SynthConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.phases.is_empty() {
            return Err(Error::Config("no phases selected".into()));
        }
        if !(0.0 < self.test_fraction && self.test_fraction < 1.0) {
            return Err(Error::Config(format!(
                "test_fraction must lie in (0, 1), got {}",
                self.test_fraction
            )));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Config(format!("tolerance must be >= 0, got {}", self.tolerance)));
        }
        if !(self.cleaning.iqr_multiplier > 0.0 && self.cleaning.iqr_multiplier.is_finite()) {
            return Err(Error::Config("cleaning.iqr_multiplier must be > 0".into()));
        }
        self.input_format()?;
        if self.text.max_terms == 0 {
            return Err(Error::Config("text.max_terms must be >= 1".into()));
        }
        for (name, c) in [
            ("procedure", &self.clustering.procedure),
            ("anesthesia", &self.clustering.anesthesia),
        ] {
            if c.k_min < 2 || c.k_max < c.k_min {
                return Err(Error::Config(format!(
                    "clustering.{name}: need 2 <= k_min <= k_max, got {}..={}",
                    c.k_min, c.k_max
                )));
            }
        }
        if self.models.roster.is_empty() {
            return Err(Error::Config("model roster is empty".into()));
        }
        if self.models.cv_folds < 2 {
            return Err(Error::Config("models.cv_folds must be >= 2".into()));
        }
        if !(self.models.smoothing >= 0.0 && self.models.smoothing.is_finite()) {
            return Err(Error::Config("models.smoothing must be >= 0".into()));
        }
        for (family, grid) in &self.models.grids {
            let spec = crate::models::GridSpec {
                family: *family,
                grid: grid.clone(),
                cv_folds: self.models.cv_folds,
                seed: 0,
            };
            spec.validate()?;
        }
        for phase in Phase::ALL {
            if !(self.floors.get(phase) >= 0.0) {
                return Err(Error::Config(format!("floor for {phase} must be >= 0")));
            }
        }
        self.synth.validate()
    }

    pub fn input_format(&self) -> Result<InputFormat> {
        self.input
            .format
            .parse()
            .map_err(|_| Error::Config(format!("unknown input format `{}`", self.input.format)))
    }

    pub fn events_path(&self) -> PathBuf {
        self.input.events.clone().unwrap_or_else(|| self.out.join("events.csv"))
    }

    pub fn cases_path(&self) -> PathBuf {
        self.input.cases.clone().unwrap_or_else(|| self.out.join("cases.csv"))
    }

    /// Stage seed: the root seed XOR the FNV-1a hash of the stage name.
    pub fn stage_seed(&self, stage: &str) -> u64 {
        derive_seed(self.seed, stage)
    }
}

pub fn derive_seed(root: u64, stage: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stage.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    root ^ h
}

//! Feature encoding of cleaned phase rows.

use serde::{Deserialize, Serialize};

use crate::encoding::{one_hot, target_encode_fit, OneHotSchema, TargetEncoder};
use crate::models::{Dataset, FoldSource};
use crate::{Error, Phase, Result};

use super::config::GroupKey;
use super::table::PhaseRow;
use super::text::TextField;

/// A cleaned row together with its `(procedure, anesthesia)` clusters.
#[derive(Debug, Clone, Copy)]
pub struct Example<'a> {
    pub row: &'a PhaseRow,
    pub clusters: (usize, usize),
}

impl Example<'_> {
    pub fn cluster(&self, field: TextField) -> usize {
        match field {
            TextField::Procedure => self.clusters.0,
            TextField::Anesthesia => self.clusters.1,
        }
    }

    pub fn text(&self, field: TextField) -> &str {
        match field {
            TextField::Procedure => &self.row.procedure_text,
            TextField::Anesthesia => &self.row.anesthesia_text,
        }
    }

    /// Grouping key for group-mean style models.
    pub fn group(&self, key: GroupKey, field: TextField) -> String {
        match key {
            GroupKey::Cluster => self.cluster(field).to_string(),
            GroupKey::ExactName => self.text(field).trim().to_string(),
        }
    }
}

/// Encoders fitted on training rows. Cluster ids are target-encoded, age is
/// mean-imputed with a missingness indicator, and the categorical attributes
/// are one-hot encoded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeaturePipeline {
    pub phase: Phase,
    pub primary: TextField,
    pub primary_encoder: TargetEncoder,
    pub secondary_encoder: TargetEncoder,
    pub age_fill: f64,
    pub sex: OneHotSchema,
    pub department: OneHotSchema,
    /// Preparation only.
    pub positioning: Option<OneHotSchema>,
}

fn positioning_label(row: &PhaseRow) -> &str {
    row.positioning_text.as_deref().unwrap_or("")
}

impl FeaturePipeline {
    pub fn fit(phase: Phase, examples: &[Example<'_>], smoothing: f64) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::InsufficientData(format!("no {phase} training rows")));
        }
        let primary = TextField::primary(phase);
        let y: Vec<f64> = examples.iter().map(|e| e.row.duration_min).collect();
        let keys = |field: TextField| -> Vec<String> {
            examples.iter().map(|e| e.cluster(field).to_string()).collect()
        };
        let ages: Vec<f64> = examples.iter().filter_map(|e| e.row.age).map(f64::from).collect();
        let age_fill = if ages.is_empty() {
            0.0
        } else {
            ages.iter().sum::<f64>() / ages.len() as f64
        };
        Ok(Self {
            phase,
            primary,
            primary_encoder: target_encode_fit(&keys(primary), &y, smoothing)?,
            secondary_encoder: target_encode_fit(&keys(primary.other()), &y, smoothing)?,
            age_fill,
            sex: OneHotSchema::fit("sex", examples.iter().map(|e| e.row.sex.as_str())),
            department: OneHotSchema::fit(
                "department",
                examples.iter().map(|e| e.row.department.as_str()),
            ),
            positioning: (phase == Phase::Preparation).then(|| {
                OneHotSchema::fit("positioning", examples.iter().map(|e| positioning_label(e.row)))
            }),
        })
    }

    pub fn feature_names(&self) -> Vec<String> {
        let mut names = vec![
            format!("{}_cluster_te", self.primary.name()),
            format!("{}_cluster_te", self.primary.other().name()),
            "age".to_string(),
            "age_missing".to_string(),
        ];
        names.extend(self.sex.feature_names());
        names.extend(self.department.feature_names());
        if let Some(p) = &self.positioning {
            names.extend(p.feature_names());
        }
        names
    }

    pub fn transform_one(&self, e: &Example<'_>) -> Vec<f64> {
        let mut x = vec![
            self.primary_encoder.encode(&e.cluster(self.primary).to_string()),
            self.secondary_encoder.encode(&e.cluster(self.primary.other()).to_string()),
            e.row.age.map_or(self.age_fill, f64::from),
            if e.row.age.is_none() { 1.0 } else { 0.0 },
        ];
        x.extend(one_hot(&self.sex, &e.row.sex));
        x.extend(one_hot(&self.department, &e.row.department));
        if let Some(p) = &self.positioning {
            x.extend(one_hot(p, positioning_label(e.row)));
        }
        x
    }

    /// Dataset over `examples`; `groups` supplies the group keys, if any.
    /// Targets of prediction-only rows may be NaN, so they are replaced by 0.
    pub fn dataset(&self, examples: &[Example<'_>], groups: Option<(GroupKey, TextField)>) -> Result<Dataset> {
        Dataset::new(
            examples.iter().map(|e| self.transform_one(e)).collect(),
            examples
                .iter()
                .map(|e| if e.row.duration_min.is_finite() { e.row.duration_min } else { 0.0 })
                .collect(),
            self.feature_names(),
            examples.iter().map(|e| e.row.case_id.clone()).collect(),
            groups.map(|(key, field)| examples.iter().map(|e| e.group(key, field)).collect()),
        )
    }
}

/// Cross-validation source that refits the feature pipeline on every
/// fold-train split, so encoders never see validation targets.
pub struct PhaseFolds<'a> {
    pub phase: Phase,
    pub examples: &'a [Example<'a>],
    pub smoothing: f64,
}

impl FoldSource for PhaseFolds<'_> {
    fn n_rows(&self) -> usize {
        self.examples.len()
    }

    fn fold(&self, train: &[usize], valid: &[usize]) -> Result<(Dataset, Dataset)> {
        let pick = |idx: &[usize]| -> Vec<Example<'_>> { idx.iter().map(|&i| self.examples[i]).collect() };
        let (tr, va) = (pick(train), pick(valid));
        let pipeline = FeaturePipeline::fit(self.phase, &tr, self.smoothing)?;
        Ok((pipeline.dataset(&tr, None)?, pipeline.dataset(&va, None)?))
    }
}

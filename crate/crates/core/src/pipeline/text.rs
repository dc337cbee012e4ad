//! Per-phase text models: normalization, TF-IDF and clustering of one
//! description field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clustering::{select_k, ClusterAlgo, ClusterModel, KScore};
use crate::textnorm::{fit_tfidf, normalize_text, vectorize, NormalizationRules, TfidfModel};
use crate::{Error, Phase, Result};

use super::config::FieldClustering;

/// Free-text fields that get clustered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TextField {
    Procedure,
    Anesthesia,
}

impl TextField {
    /// The field whose clusters key the group-mean model of a phase.
    pub fn primary(phase: Phase) -> Self {
        match phase {
            Phase::Induction => TextField::Anesthesia,
            Phase::Preparation | Phase::Procedure => TextField::Procedure,
        }
    }

    pub fn other(self) -> Self {
        match self {
            TextField::Procedure => TextField::Anesthesia,
            TextField::Anesthesia => TextField::Procedure,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TextField::Procedure => "procedure",
            TextField::Anesthesia => "anesthesia",
        }
    }
}

/// TF-IDF vocabulary and cluster model of one field.
///
/// `cluster` is `None` when the training data held fewer than three distinct
/// normalized descriptions; every text then maps to cluster 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldModel {
    pub field: TextField,
    pub algo: ClusterAlgo,
    pub tfidf: TfidfModel,
    pub unique_documents: usize,
    pub k: usize,
    pub k_scores: Vec<KScore>,
    pub cluster: Option<ClusterModel>,
}

impl FieldModel {
    /// Fit on raw training texts. The k search runs over the distinct
    /// normalized documents so that frequent descriptions do not dominate the
    /// silhouette.
    pub fn fit(
        field: TextField,
        texts: &[&str],
        rules: &NormalizationRules,
        settings: &FieldClustering,
        max_terms: usize,
        seed: u64,
    ) -> Result<Self> {
        let docs: Vec<Vec<String>> = texts.iter().map(|t| normalize_text(t, rules)).collect();
        let tfidf = fit_tfidf(&docs, Some(max_terms))?;
        let unique: Vec<&Vec<String>> = {
            let mut seen: BTreeMap<&Vec<String>, ()> = BTreeMap::new();
            for d in &docs {
                seen.insert(d, ());
            }
            seen.into_keys().collect()
        };
        let dim = tfidf.dim();
        let x: Vec<Vec<f64>> = unique.iter().map(|d| vectorize(d, &tfidf).to_dense(dim)).collect();

        let k_max = settings.k_max.min(x.len().saturating_sub(1));
        let (k, k_scores, cluster) = if k_max < settings.k_min.max(2) {
            (1, Vec::new(), None)
        } else {
            let (k, scores) = select_k(&x, settings.algo, settings.k_min..=k_max, seed)?;
            let model = ClusterModel::fit(settings.algo, &x, k, seed.wrapping_add(k as u64))?;
            (k, scores, Some(model))
        };
        Ok(Self {
            field,
            algo: settings.algo,
            tfidf,
            unique_documents: x.len(),
            k,
            k_scores,
            cluster,
        })
    }

    pub fn assign(&self, text: &str, rules: &NormalizationRules) -> Result<usize> {
        match &self.cluster {
            None => Ok(0),
            Some(m) => {
                let v = vectorize(&normalize_text(text, rules), &self.tfidf).to_dense(self.tfidf.dim());
                m.assign_one(&v)
            }
        }
    }
}

/// Everything needed to map raw descriptions of one phase to clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextModels {
    pub phase: Phase,
    pub rules: NormalizationRules,
    pub procedure: FieldModel,
    pub anesthesia: FieldModel,
}

impl TextModels {
    pub fn field(&self, field: TextField) -> &FieldModel {
        match field {
            TextField::Procedure => &self.procedure,
            TextField::Anesthesia => &self.anesthesia,
        }
    }

    /// `(procedure_cluster, anesthesia_cluster)`.
    pub fn assign(&self, procedure_text: &str, anesthesia_text: &str) -> Result<(usize, usize)> {
        Ok((
            self.procedure.assign(procedure_text, &self.rules)?,
            self.anesthesia.assign(anesthesia_text, &self.rules)?,
        ))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("text models: {e}")))
    }
}

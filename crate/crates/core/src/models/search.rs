//! Grid search with seeded k-fold cross-validation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Dataset, ForestParams, GbmParams, ModelFamily, ModelSpec, TreeParams};
use crate::{Error, Result};

/// One point of a parameter grid.
pub type ParamSet = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub family: ModelFamily,
    pub grid: BTreeMap<String, Vec<f64>>,
    pub cv_folds: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(family: ModelFamily, seed: u64) -> Self {
        Self {
            family,
            grid: default_grid(family),
            cv_folds: 5,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cv_folds < 2 {
            return Err(Error::Config(format!("cv_folds must be >= 2, got {}", self.cv_folds)));
        }
        if let Some((k, _)) = self.grid.iter().find(|(_, v)| v.is_empty()) {
            return Err(Error::Config(format!("grid entry `{k}` has no candidate values")));
        }
        for p in self.candidates() {
            self.family.spec(&p, self.seed)?;
        }
        Ok(())
    }

    /// Cartesian product in key order, the last key varying fastest.
    pub fn candidates(&self) -> Vec<ParamSet> {
        let mut out = vec![ParamSet::new()];
        for (key, values) in &self.grid {
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(key.clone(), *v);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Default grids per family.
pub fn default_grid(family: ModelFamily) -> BTreeMap<String, Vec<f64>> {
    let entries: Vec<(&str, Vec<f64>)> = match family {
        ModelFamily::Gbm => vec![
            ("n_trees", vec![50.0, 200.0]),
            ("learning_rate", vec![0.05, 0.1]),
            ("max_depth", vec![2.0, 3.0]),
        ],
        ModelFamily::Forest => vec![
            ("n_trees", vec![100.0]),
            ("max_depth", vec![8.0, 12.0]),
            ("feature_fraction", vec![0.6, 1.0]),
        ],
        ModelFamily::Ridge => vec![("lambda", vec![0.01, 0.1, 1.0])],
        ModelFamily::Tree => vec![("max_depth", vec![4.0, 8.0, 12.0])],
        ModelFamily::Mean | ModelFamily::GroupMean | ModelFamily::Mta => vec![],
    };
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn count(params: &ParamSet, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(&v) if v >= 0.0 && v.fract() == 0.0 && v < 1e9 => Ok(v as usize),
        Some(&v) => Err(Error::Config(format!("`{key}` must be a non-negative integer, got {v}"))),
    }
}

impl ModelFamily {
    /// Concrete spec for one parameter set; unknown keys are rejected.
    pub fn spec(self, params: &ParamSet, seed: u64) -> Result<ModelSpec> {
        let allowed: &[&str] = match self {
            ModelFamily::Mean | ModelFamily::GroupMean | ModelFamily::Mta => &[],
            ModelFamily::Ridge => &["lambda"],
            ModelFamily::Tree => &["max_depth", "min_leaf"],
            ModelFamily::Forest => &["n_trees", "max_depth", "min_leaf", "feature_fraction", "bootstrap"],
            ModelFamily::Gbm => &["n_trees", "learning_rate", "max_depth", "min_leaf", "subsample"],
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Config(format!("`{k}` is not a parameter of `{self}`")));
        }
        let get = |k: &str, d: f64| params.get(k).copied().unwrap_or(d);
        Ok(match self {
            ModelFamily::Mean => ModelSpec::Mean,
            ModelFamily::GroupMean | ModelFamily::Mta => ModelSpec::GroupMean,
            ModelFamily::Ridge => ModelSpec::Ridge {
                lambda: get("lambda", 1.0),
            },
            ModelFamily::Tree => {
                let d = TreeParams::default();
                ModelSpec::Tree(TreeParams {
                    max_depth: count(params, "max_depth", d.max_depth)?,
                    min_leaf: count(params, "min_leaf", d.min_leaf)?,
                })
            }
            ModelFamily::Forest => {
                let d = ForestParams::default();
                ModelSpec::Forest(ForestParams {
                    n_trees: count(params, "n_trees", d.n_trees)?,
                    max_depth: count(params, "max_depth", d.max_depth)?,
                    min_leaf: count(params, "min_leaf", d.min_leaf)?,
                    feature_fraction: get("feature_fraction", d.feature_fraction),
                    bootstrap: get("bootstrap", 1.0) != 0.0,
                    seed,
                })
            }
            ModelFamily::Gbm => {
                let d = GbmParams::default();
                ModelSpec::Gbm(GbmParams {
                    n_trees: count(params, "n_trees", d.n_trees)?,
                    learning_rate: get("learning_rate", d.learning_rate),
                    max_depth: count(params, "max_depth", d.max_depth)?,
                    min_leaf: count(params, "min_leaf", d.min_leaf)?,
                    subsample: get("subsample", d.subsample),
                    seed,
                })
            }
        })
    }
}

/// Produces the fold-train and fold-validation datasets for index sets of
/// the underlying rows. Implementations refit any data-dependent encoding on
/// the fold-train rows only.
pub trait FoldSource: Sync {
    fn n_rows(&self) -> usize;
    fn fold(&self, train: &[usize], valid: &[usize]) -> Result<(Dataset, Dataset)>;
}

impl FoldSource for Dataset {
    fn n_rows(&self) -> usize {
        self.len()
    }

    fn fold(&self, train: &[usize], valid: &[usize]) -> Result<(Dataset, Dataset)> {
        Ok((self.subset(train), self.subset(valid)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvRow {
    pub params: ParamSet,
    pub fold_mae: Vec<f64>,
    /// `None` when any fold failed.
    pub mean_mae: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub best_index: usize,
    pub best_params: ParamSet,
    pub best_spec: ModelSpec,
    pub cv_table: Vec<CvRow>,
}

/// Seeded fold labels: shuffled position modulo `k`.
pub(crate) fn fold_assignment(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut fold = vec![0; n];
    for (pos, &row) in order.iter().enumerate() {
        fold[row] = pos % k;
    }
    fold
}

fn mae(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
}

/// Lowest mean CV MAE wins; ties go to the earliest candidate.
pub fn grid_search<S: FoldSource + ?Sized>(spec: &GridSpec, source: &S) -> Result<GridResult> {
    spec.validate()?;
    let n = source.n_rows();
    if n < spec.cv_folds {
        return Err(Error::InsufficientData(format!(
            "{n} rows cannot be split into {} folds",
            spec.cv_folds
        )));
    }
    let labels = fold_assignment(n, spec.cv_folds, spec.seed);
    let folds: Vec<(Dataset, Dataset)> = (0..spec.cv_folds)
        .map(|f| {
            let train: Vec<usize> = (0..n).filter(|&i| labels[i] != f).collect();
            let valid: Vec<usize> = (0..n).filter(|&i| labels[i] == f).collect();
            source.fold(&train, &valid)
        })
        .collect::<Result<_>>()?;

    let candidates = spec.candidates();
    let cv_table: Vec<CvRow> = candidates
        .par_iter()
        .map(|params| {
            let run = || -> Result<Vec<f64>> {
                let model_spec = spec.family.spec(params, spec.seed)?;
                folds
                    .iter()
                    .map(|(train, valid)| {
                        let model = model_spec.fit(train)?;
                        Ok(mae(&model.predict(valid)?, &valid.y))
                    })
                    .collect()
            };
            match run() {
                Ok(fold_mae) => CvRow {
                    params: params.clone(),
                    mean_mae: Some(fold_mae.iter().sum::<f64>() / fold_mae.len() as f64),
                    fold_mae,
                    error: None,
                },
                Err(e) => CvRow {
                    params: params.clone(),
                    fold_mae: Vec::new(),
                    mean_mae: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (i, row) in cv_table.iter().enumerate() {
        if let Some(m) = row.mean_mae {
            if best.is_none_or(|(_, b)| m < b) {
                best = Some((i, m));
            }
        }
    }
    let (best_index, _) = best.ok_or_else(|| {
        let first = cv_table.iter().find_map(|r| r.error.clone()).unwrap_or_default();
        Error::Numerical(format!("every grid candidate failed; first error: {first}"))
    })?;
    let best_params = cv_table[best_index].params.clone();
    Ok(GridResult {
        best_index,
        best_spec: spec.family.spec(&best_params, spec.seed)?,
        best_params,
        cv_table,
    })
}

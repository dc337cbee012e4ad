//! Duration models behind one fit/predict contract: global and grouped
//! means, ridge regression, regression trees, random forests and gradient
//! boosting, plus the train/test split and grid search.

mod linear;
mod search;
mod tree;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use search::{
    default_grid, grid_search, CvRow, FoldSource, GridResult, GridSpec, ParamSet,
};
pub use tree::{Node, Tree, TreeParams};

use crate::{Error, Result};
use tree::{build_tree, Binned, FeatureSampler};

/// Numeric design matrix with targets. `groups` carries the grouping key
/// used by group-mean models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub feature_names: Vec<String>,
    pub row_ids: Vec<String>,
    pub groups: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        feature_names: Vec<String>,
        row_ids: Vec<String>,
        groups: Option<Vec<String>>,
    ) -> Result<Self> {
        let ds = Self {
            x,
            y,
            feature_names,
            row_ids,
            groups,
        };
        ds.validate()?;
        Ok(ds)
    }

    /// Rows of `x` with generated ids and no grouping.
    pub fn from_xy(x: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        let d = x.first().map_or(0, Vec::len);
        let names = (0..d).map(|j| format!("x{j}")).collect();
        let ids = (0..y.len()).map(|i| i.to_string()).collect();
        Self::new(x, y, names, ids, None)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.y.len();
        if n == 0 {
            return Err(Error::InsufficientData("dataset has no rows".into()));
        }
        for (len, what) in [(self.x.len(), "x"), (self.row_ids.len(), "row_ids")] {
            if len != n {
                return Err(Error::InvalidInput(format!("{what} has {len} rows, y has {n}")));
            }
        }
        if let Some(g) = &self.groups {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let d = self.feature_names.len();
        for row in &self.x {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("feature matrix contains NaN or Inf".into()));
            }
        }
        if self.y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("targets contain NaN or Inf".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn subset(&self, idx: &[usize]) -> Self {
        Self {
            x: idx.iter().map(|&i| self.x[i].clone()).collect(),
            y: idx.iter().map(|&i| self.y[i]).collect(),
            feature_names: self.feature_names.clone(),
            row_ids: idx.iter().map(|&i| self.row_ids[i].clone()).collect(),
            groups: self
                .groups
                .as_ref()
                .map(|g| idx.iter().map(|&i| g[i].clone()).collect()),
        }
    }
}

/// Seeded shuffle; the first `floor(n * test_fraction)` shuffled positions
/// form the test set. Both index lists come back sorted.
pub fn split_indices(n: usize, test_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 5 {
        return Err(Error::InsufficientData(format!("need at least 5 rows to split, got {n}")));
    }
    if !(0.0..1.0).contains(&test_fraction) {
        return Err(Error::InvalidInput(format!(
            "test fraction must lie in [0, 1), got {test_fraction}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_test = (n as f64 * test_fraction).floor() as usize;
    let mut test = order[..n_test].to_vec();
    let mut train = order[n_test..].to_vec();
    test.sort_unstable();
    train.sort_unstable();
    Ok((train, test))
}

pub fn train_test_split(data: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    let (train, test) = split_indices(data.len(), test_fraction, seed)?;
    Ok((data.subset(&train), data.subset(&test)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    pub feature_fraction: f64,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        Self {
            n_trees: 100,
            max_depth: 8,
            min_leaf: 5,
            feature_fraction: 1.0,
            bootstrap: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbmParams {
    pub n_trees: usize,
    pub learning_rate: f64,
    pub max_depth: usize,
    pub min_leaf: usize,
    /// Row fraction drawn without replacement per stage; 1 uses every row.
    pub subsample: f64,
    pub seed: u64,
}

impl Default for GbmParams {
    fn default() -> Self {
        Self {
            n_trees: 100,
            learning_rate: 0.1,
            max_depth: 3,
            min_leaf: 5,
            subsample: 1.0,
            seed: 0,
        }
    }
}

/// Model families named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFamily {
    Mean,
    GroupMean,
    Mta,
    Ridge,
    Tree,
    Forest,
    Gbm,
}

impl ModelFamily {
    pub const ROSTER: [ModelFamily; 6] = [
        ModelFamily::Mean,
        ModelFamily::GroupMean,
        ModelFamily::Mta,
        ModelFamily::Ridge,
        ModelFamily::Forest,
        ModelFamily::Gbm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::Mean => "mean",
            ModelFamily::GroupMean => "group-mean",
            ModelFamily::Mta => "mta",
            ModelFamily::Ridge => "ridge",
            ModelFamily::Tree => "tree",
            ModelFamily::Forest => "forest",
            ModelFamily::Gbm => "gbm",
        }
    }

    pub fn is_tunable(self) -> bool {
        matches!(
            self,
            ModelFamily::Ridge | ModelFamily::Tree | ModelFamily::Forest | ModelFamily::Gbm
        )
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ModelFamily::Mean,
            ModelFamily::GroupMean,
            ModelFamily::Mta,
            ModelFamily::Ridge,
            ModelFamily::Tree,
            ModelFamily::Forest,
            ModelFamily::Gbm,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown model `{s}`")))
    }
}

/// A model family with concrete hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModelSpec {
    Mean,
    /// Per-group mean keyed by `Dataset::groups`.
    GroupMean,
    Ridge { lambda: f64 },
    Tree(TreeParams),
    Forest(ForestParams),
    Gbm(GbmParams),
}

impl ModelSpec {
    pub fn fit(&self, data: &Dataset) -> Result<Model> {
        match self {
            ModelSpec::Mean => fit_mean(data),
            ModelSpec::GroupMean => fit_group_mean(data),
            ModelSpec::Ridge { lambda } => fit_ridge(data, *lambda),
            ModelSpec::Tree(p) => fit_tree(data, *p),
            ModelSpec::Forest(p) => fit_forest(data, *p),
            ModelSpec::Gbm(p) => fit_gbm(data, *p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbmModel {
    pub base: f64,
    pub learning_rate: f64,
    pub trees: Vec<Tree>,
    /// Training mean squared error after the base model and after each stage.
    pub train_loss: Vec<f64>,
}

/// A fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    Mean {
        value: f64,
    },
    GroupMean {
        global: f64,
        groups: BTreeMap<String, f64>,
    },
    Ridge {
        intercept: f64,
        coefficients: Vec<f64>,
    },
    Tree {
        n_features: usize,
        tree: Tree,
    },
    Forest {
        n_features: usize,
        trees: Vec<Tree>,
    },
    Gbm {
        n_features: usize,
        model: GbmModel,
    },
}

impl Model {
    fn n_features(&self) -> Option<usize> {
        match self {
            Model::Mean { .. } | Model::GroupMean { .. } => None,
            Model::Ridge { coefficients, .. } => Some(coefficients.len()),
            Model::Tree { n_features, .. }
            | Model::Forest { n_features, .. }
            | Model::Gbm { n_features, .. } => Some(*n_features),
        }
    }

    fn raw(&self, x: &[f64], group: Option<&str>) -> f64 {
        match self {
            Model::Mean { value } => *value,
            Model::GroupMean { global, groups } => group
                .and_then(|g| groups.get(g))
                .copied()
                .unwrap_or(*global),
            Model::Ridge {
                intercept,
                coefficients,
            } => intercept + coefficients.iter().zip(x).map(|(b, v)| b * v).sum::<f64>(),
            Model::Tree { tree, .. } => tree.predict(x),
            Model::Forest { trees, .. } => {
                trees.iter().map(|t| t.predict(x)).sum::<f64>() / trees.len() as f64
            }
            Model::Gbm { model, .. } => {
                model.base
                    + model
                        .trees
                        .iter()
                        .map(|t| model.learning_rate * t.predict(x))
                        .sum::<f64>()
            }
        }
    }

    /// Prediction in minutes, clamped at zero.
    pub fn predict_one(&self, x: &[f64], group: Option<&str>) -> Result<f64> {
        if let Some(d) = self.n_features() {
            if x.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: x.len(),
                });
            }
        }
        let v = self.raw(x, group);
        if !v.is_finite() {
            return Err(Error::Numerical("prediction is not finite".into()));
        }
        Ok(v.max(0.0))
    }

    pub fn predict(&self, data: &Dataset) -> Result<Vec<f64>> {
        data.x
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let g = data.groups.as_ref().map(|g| g[i].as_str());
                self.predict_one(x, g)
            })
            .collect()
    }
}

/// Holds a spec and, once fitted, its model.
#[derive(Debug, Clone)]
pub struct Estimator {
    pub spec: ModelSpec,
    fitted: Option<Model>,
}

impl Estimator {
    pub fn new(spec: ModelSpec) -> Self {
        Self { spec, fitted: None }
    }

    pub fn fit(&mut self, data: &Dataset) -> Result<&Model> {
        let model = self.spec.fit(data)?;
        Ok(self.fitted.insert(model))
    }

    pub fn model(&self) -> Result<&Model> {
        self.fitted.as_ref().ok_or(Error::NotFitted)
    }

    pub fn predict(&self, data: &Dataset) -> Result<Vec<f64>> {
        self.model()?.predict(data)
    }
}

fn mean(y: &[f64]) -> f64 {
    y.iter().sum::<f64>() / y.len() as f64
}

pub fn fit_mean(data: &Dataset) -> Result<Model> {
    data.validate()?;
    Ok(Model::Mean {
        value: mean(&data.y),
    })
}

/// Per-group training means; unseen groups fall back to the global mean.
pub fn fit_group_mean(data: &Dataset) -> Result<Model> {
    data.validate()?;
    let groups = data
        .groups
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("group-mean model needs group keys".into()))?;
    let mut acc: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for (g, y) in groups.iter().zip(&data.y) {
        let e = acc.entry(g.clone()).or_default();
        e.0 += y;
        e.1 += 1;
    }
    Ok(Model::GroupMean {
        global: mean(&data.y),
        groups: acc
            .into_iter()
            .map(|(g, (s, c))| (g, s / c as f64))
            .collect(),
    })
}

pub fn fit_ridge(data: &Dataset, lambda: f64) -> Result<Model> {
    data.validate()?;
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda must be >= 0, got {lambda}")));
    }
    let d = data.n_features();
    if d == 0 {
        return Err(Error::InvalidInput("ridge needs at least one feature".into()));
    }
    let (intercept, coefficients) = linear::solve_ridge(&data.x, &data.y, d, lambda)?;
    Ok(Model::Ridge {
        intercept,
        coefficients,
    })
}

pub fn fit_tree(data: &Dataset, params: TreeParams) -> Result<Model> {
    data.validate()?;
    let binned = Binned::new(&data.x, data.n_features());
    let tree = build_tree::<ChaCha8Rng>(&binned, &data.y, (0..data.len()).collect(), params, None);
    Ok(Model::Tree {
        n_features: data.n_features(),
        tree,
    })
}

pub fn fit_forest(data: &Dataset, params: ForestParams) -> Result<Model> {
    data.validate()?;
    if params.n_trees == 0 {
        return Err(Error::InvalidInput("forest needs at least one tree".into()));
    }
    if !(params.feature_fraction > 0.0 && params.feature_fraction <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "feature_fraction must lie in (0, 1], got {}",
            params.feature_fraction
        )));
    }
    let d = data.n_features();
    let n = data.len();
    let per_split = ((params.feature_fraction * d as f64).ceil() as usize).clamp(1, d.max(1));
    let binned = Binned::new(&data.x, d);
    let tree_params = TreeParams {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
    };
    let trees: Vec<Tree> = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(t as u64);
            let rows: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let sampler = FeatureSampler {
                rng: &mut rng,
                per_split,
            };
            build_tree(&binned, &data.y, rows, tree_params, Some(sampler))
        })
        .collect();
    Ok(Model::Forest {
        n_features: d,
        trees,
    })
}

pub fn fit_gbm(data: &Dataset, params: GbmParams) -> Result<Model> {
    data.validate()?;
    if !(params.learning_rate > 0.0 && params.learning_rate.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "learning_rate must be > 0, got {}",
            params.learning_rate
        )));
    }
    if !(params.subsample > 0.0 && params.subsample <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "subsample must lie in (0, 1], got {}",
            params.subsample
        )));
    }
    let n = data.len();
    let d = data.n_features();
    let base = mean(&data.y);
    let binned = Binned::new(&data.x, d);
    let tree_params = TreeParams {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut fitted = vec![base; n];
    let mse = |f: &[f64]| {
        f.iter()
            .zip(&data.y)
            .map(|(p, y)| (y - p) * (y - p))
            .sum::<f64>()
            / n as f64
    };
    let mut train_loss = vec![mse(&fitted)];
    let mut trees = Vec::with_capacity(params.n_trees);
    let n_sub = ((params.subsample * n as f64).round() as usize).clamp(1, n);
    for _ in 0..params.n_trees {
        let residual: Vec<f64> = data.y.iter().zip(&fitted).map(|(y, f)| y - f).collect();
        let rows: Vec<usize> = if n_sub < n {
            let mut r = rand::seq::index::sample(&mut rng, n, n_sub).into_vec();
            r.sort_unstable();
            r
        } else {
            (0..n).collect()
        };
        let tree = build_tree::<ChaCha8Rng>(&binned, &residual, rows, tree_params, None);
        for (f, x) in fitted.iter_mut().zip(&data.x) {
            *f += params.learning_rate * tree.predict(x);
        }
        train_loss.push(mse(&fitted));
        trees.push(tree);
    }
    Ok(Model::Gbm {
        n_features: d,
        model: GbmModel {
            base,
            learning_rate: params.learning_rate,
            trees,
            train_loss,
        },
    })
}
